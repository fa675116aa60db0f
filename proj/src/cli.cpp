#include "crshadow/cli.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crshadow/fin_core.hpp"
#include "crshadow/fin_shadow.hpp"
#include "crshadow/gallery.hpp"
#include "crshadow/io.hpp"
#include "crshadow/random_system.hpp"
#include "crshadow/shift_sft.hpp"

namespace crshadow {
namespace {

using nlohmann::json;

std::string lasso_str(const FiniteMetricSpace& sp, const Lasso<PointId>& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.prefix.size(); ++i) {
    if (i) os << ' ';
    os << sp.labels[w.prefix[i]];
  }
  os << " | ";
  for (std::size_t i = 0; i < w.cycle.size(); ++i) {
    if (i) os << ' ';
    os << sp.labels[w.cycle[i]];
  }
  os << ')';
  return os.str();
}

std::pair<int, int> parse_property(const std::string& s) {
  if (s.size() == 3 && s[1] == ',' && (s[0] == '1' || s[0] == '2') &&
      (s[2] == '1' || s[2] == '2'))
    return {s[0] - '0', s[2] - '0'};
  throw std::invalid_argument("property must be i,j with i, j in {1, 2}");
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// decide ------------------------------------------------------------------

struct DecideOpts {
  std::string in, property, witnessPath;
  bool inverse = false;
  std::string format = "markdown-table";
};

std::string verdict_detail(const FiniteMetricSpace& sp, const FinVerdict& v) {
  std::ostringstream os;
  if (v.holds) {
    os << "delta schedule over " << v.schedule.size() << " eps classes";
  } else {
    os << "eps* = " << (v.eps_star ? v.eps_star->str() : "?");
    if (v.witness) os << ", witness " << lasso_str(sp, *v.witness);
  }
  return os.str();
}

int cmd_decide(const DecideOpts& o, std::ostream& out) {
  FiniteRelation g = finite_system_from_json(read_json_file(o.in));
  if (o.inverse) g = inverse(g);
  const FiniteMetricSpace& sp = g.X();

  std::vector<std::pair<int, int>> props;
  if (o.property.empty())
    props = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  else
    props = {parse_property(o.property)};

  std::vector<FinVerdict> verdicts;
  for (auto [i, j] : props) verdicts.push_back(decide_shadowing(g, i, j));

  int exitCode = 0;
  json checkReport;
  if (!o.witnessPath.empty()) {
    if (o.property.empty())
      throw std::invalid_argument("--check-witness needs --property");
    auto [i, j] = props[0];
    const FinVerdict& v = verdicts[0];
    Lasso<PointId> w = lasso_from_json(sp, [&] {
      json wj = read_json_file(o.witnessPath);
      return wj.contains("witness") ? wj.at("witness") : wj;
    }());
    bool isPo = false, unshadowed = false;
    if (!v.holds && v.eps_star) {
      Rational dstar = threshold_ladder(sp).subminimal();
      isPo = is_pseudo_orbit(g, w, dstar, i);
      unshadowed = j == 1 ? universal_shadowers(g, w, *v.eps_star) == 0
                          : !existential_shadower(g, w, *v.eps_star);
    }
    bool valid = !v.holds && isPo && unshadowed;
    exitCode = valid ? 0 : 3;
    checkReport = json{{"witness", lasso_to_json(sp, w)},
                       {"propertyFails", !v.holds},
                       {"pseudoOrbit", isPo},
                       {"unshadowed", unshadowed},
                       {"valid", valid}};
  }

  if (o.format == "json") {
    std::ostringstream cfg;
    cfg << "decide format=" << o.format << " in=" << o.in
        << " inverse=" << (o.inverse ? 1 : 0) << " property=" << o.property
        << " witness=" << o.witnessPath;
    json rep = report_envelope("decide", cfg.str());
    rep["input"] = o.in;
    rep["inverse"] = o.inverse;
    json vs = json::array();
    for (const FinVerdict& v : verdicts) vs.push_back(verdict_to_json(sp, v));
    rep["verdicts"] = std::move(vs);
    if (!checkReport.is_null()) rep["checkWitness"] = std::move(checkReport);
    emit_json(out, rep);
  } else {
    out << "| property | verdict | detail |\n|---|---|---|\n";
    for (const FinVerdict& v : verdicts)
      out << "| " << v.i << "," << v.j << " | " << (v.holds ? "holds" : "fails")
          << " | " << verdict_detail(sp, v) << " |\n";
    if (!checkReport.is_null())
      out << "\nwitness check: "
          << (checkReport.at("valid").get<bool>() ? "valid" : "INVALID")
          << " (pseudo-orbit " << checkReport.at("pseudoOrbit").get<bool>()
          << ", unshadowed " << checkReport.at("unshadowed").get<bool>()
          << ")\n";
  }
  return exitCode;
}

// audit -------------------------------------------------------------------

struct AuditOpts {
  int count = 0, size = 0, kmax = 4;
  std::uint64_t seed = 0;
  bool oracle = false;
  std::string format = "markdown-table";
};

int cmd_audit(const AuditOpts& o, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  int systems = 0;
  long oracleChecks = 0;
  std::vector<std::string> violations;

  if (o.size >= 2) {
    for (int t = 0; t < o.count; ++t) {
      FiniteRelation g = random_system(rng, o.size);
      ++systems;
      std::string tag = "system " + std::to_string(t) + ": ";
      ImplicationAudit ia = implication_audit(g);
      for (const std::string& v : ia.violations) violations.push_back(tag + v);
      PowerAudit pa = power_audit(g, o.kmax);
      for (const std::string& v : pa.violations) violations.push_back(tag + v);
      if (o.oracle) {
        ThresholdLadder ladder = threshold_ladder(g.X());
        std::vector<Rational> deltas = ladder.values;
        deltas.insert(deltas.begin(), ladder.subminimal());
        int maxLen = g.size() * (1 << g.size());
        // budget keeps dense-graph enumeration affordable; witnesses are
        // short, so agreement is still meaningful at this bound
        const long budget = 2000;
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j)
            for (const Rational& eps : ladder.values)
              for (const Rational& delta : deltas) {
                bool direct =
                    shadowing_failure_at(g, i, j, eps, delta).has_value();
                bool brute = falsify_bounded(g, i, j, eps, delta, maxLen,
                                             budget)
                                 .has_value();
                ++oracleChecks;
                if (direct != brute) {
                  std::ostringstream os;
                  os << tag << "oracle mismatch (" << i << "," << j
                     << ") eps=" << eps.str() << " delta=" << delta.str()
                     << " direct=" << direct << " brute=" << brute;
                  violations.push_back(os.str());
                }
              }
      }
    }
  }

  if (o.format == "json") {
    std::ostringstream cfg;
    cfg << "audit count=" << o.count << " format=" << o.format
        << " kmax=" << o.kmax << " oracle=" << (o.oracle ? 1 : 0)
        << " seed=" << o.seed << " size=" << o.size;
    json rep = report_envelope("audit", cfg.str());
    rep["systems"] = systems;
    rep["oracleChecks"] = oracleChecks;
    rep["violations"] = violations;
    emit_json(out, rep);
  } else {
    out << "systems audited: " << systems << "\n";
    if (o.oracle) out << "oracle checks: " << oracleChecks << "\n";
    out << "violations: " << violations.size() << "\n";
    for (const std::string& v : violations) out << "  " << v << "\n";
  }
  return violations.empty() ? 0 : 3;
}

// gallery -----------------------------------------------------------------

struct GalleryOpts {
  bool list = false;
  std::string name;
  std::vector<std::string> params;
  std::string format = "markdown-table";
};

json claim_json(const ClaimReport& c) {
  json e{{"claim", c.claim},
         {"property", c.property},
         {"expected", c.expected_holds},
         {"observed", c.observed_holds},
         {"passed", c.passed},
         {"witness", c.witness}};
  if (c.skipped) e["skipped"] = true;
  if (!c.note.empty()) e["note"] = c.note;
  return e;
}

int cmd_gallery(const GalleryOpts& o, std::ostream& out) {
  if (o.list) {
    if (o.format == "json") {
      json rep = report_envelope("gallery", "gallery list");
      rep["items"] = gallery_names();
      emit_json(out, rep);
    } else {
      for (const std::string& n : gallery_names()) out << n << "\n";
    }
    return 0;
  }

  std::map<std::string, std::string> params;
  for (const std::string& kv : o.params) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (o.name.empty() && !params.empty())
    throw std::invalid_argument("--param needs a named item");

  std::vector<std::string> names =
      o.name.empty() ? gallery_names() : std::vector<std::string>{o.name};
  std::vector<ItemReport> reports;
  for (const std::string& n : names)
    reports.push_back(gallery_run(gallery_build(n, params)));

  bool allPassed = true;
  for (const ItemReport& r : reports) allPassed = allPassed && r.all_passed;

  if (o.format == "json") {
    std::ostringstream cfg;
    cfg << "gallery run format=" << o.format << " name=" << o.name
        << " params=";
    for (const std::string& kv : o.params) cfg << kv << ",";
    json rep = report_envelope("gallery", cfg.str());
    json items = json::array();
    for (const ItemReport& r : reports) {
      json claims = json::array();
      for (const ClaimReport& c : r.claims) claims.push_back(claim_json(c));
      items.push_back(json{{"item", r.item},
                           {"allPassed", r.all_passed},
                           {"claims", std::move(claims)}});
    }
    rep["items"] = std::move(items);
    rep["allPassed"] = allPassed;
    emit_json(out, rep);
  } else {
    for (const ItemReport& r : reports) {
      out << "== " << r.item << " " << (r.all_passed ? "pass" : "FAIL") << "\n";
      for (const ClaimReport& c : r.claims) {
        out << "  " << (c.skipped ? "skip" : c.passed ? "ok  " : "FAIL") << " "
            << c.claim << " [" << c.property << "]";
        if (!c.skipped)
          out << " expected=" << c.expected_holds
              << " observed=" << c.observed_holds;
        out << "\n";
        if (!c.witness.empty()) out << "       " << c.witness << "\n";
        if (!c.note.empty()) out << "       note: " << c.note << "\n";
      }
    }
  }
  return allPassed ? 0 : 3;
}

// shift -------------------------------------------------------------------

struct ShiftDemoOpts {
  std::string system;
  bool search = false;
  int count = 0, size = 3, k = 3, m = 6;
  std::uint64_t seed = 0;
  bool seedSet = false;
  std::string format = "markdown-table";
};

json demo_json(const ShiftDemoReport& r) {
  return json{{"k", r.k},
              {"m", r.m},
              {"eps", r.eps.str()},
              {"delta", r.delta.str()},
              {"candidates", r.candidates},
              {"pseudoOrbits", r.pseudo_orbits},
              {"shadowed", r.shadowed},
              {"allShadowed", r.all_shadowed()},
              {"failures", r.failures}};
}

void demo_line(std::ostream& out, const ShiftDemoReport& r) {
  out << "eps=" << r.eps.str() << " delta=" << r.delta.str()
      << " candidates=" << r.candidates
      << " pseudo-orbits=" << r.pseudo_orbits << " shadowed=" << r.shadowed
      << " all=" << (r.all_shadowed() ? "yes" : "NO") << "\n";
  for (const std::string& f : r.failures) out << "  unshadowed: " << f << "\n";
}

int cmd_shift_demo(const ShiftDemoOpts& o, std::ostream& out) {
  std::ostringstream cfg;
  cfg << "shift demo count=" << o.count << " format=" << o.format
      << " k=" << o.k << " m=" << o.m << " search=" << (o.search ? 1 : 0)
      << " seed=" << o.seed << " size=" << o.size << " system=" << o.system;

  if (!o.search && o.system.empty())
    throw std::invalid_argument("shift demo needs --system or --search");
  if (o.search && !o.system.empty())
    throw std::invalid_argument("--system and --search are exclusive");

  if (!o.search) {
    FiniteRelation g = finite_system_from_json(read_json_file(o.system));
    ShiftDemoReport r = shift_shadowing_demo(g, o.k, o.m);
    if (o.format == "json") {
      json rep = report_envelope("shift demo", cfg.str());
      rep["report"] = demo_json(r);
      emit_json(out, rep);
    } else {
      demo_line(out, r);
    }
    return 0;
  }

  if (!o.seedSet)
    throw std::invalid_argument("--search needs --seed for reproducibility");
  if (o.count < 1) throw std::invalid_argument("--search needs --count >= 1");
  std::mt19937_64 rng(o.seed);
  json results = json::array();
  for (int t = 0; t < o.count; ++t) {
    if (o.size < 2) break;
    FiniteRelation g = random_system(rng, o.size);
    std::string head = "system " + std::to_string(t);
    try {
      ShiftDemoReport r = shift_shadowing_demo(g, o.k, o.m);
      if (o.format == "json")
        results.push_back(json{{"system", t}, {"report", demo_json(r)}});
      else {
        out << head << ": ";
        demo_line(out, r);
      }
    } catch (const FlaggedSystem& e) {
      // a search outcome, not a process failure: record and continue
      if (o.format == "json")
        results.push_back(json{{"system", t}, {"flagged", e.what()}});
      else
        out << head << ": flagged (" << e.what() << ")\n";
    }
  }
  if (o.format == "json") {
    json rep = report_envelope("shift demo", cfg.str());
    rep["results"] = std::move(results);
    emit_json(out, rep);
  }
  return 0;
}

struct ShiftClosingOpts {
  int n = 4;
  std::string format = "markdown-table";
};

int cmd_shift_closing(const ShiftClosingOpts& o, std::ostream& out) {
  ClosingReport r = closing_example_check(o.n);
  if (o.format == "json") {
    std::ostringstream cfg;
    cfg << "shift closing format=" << o.format << " n=" << o.n;
    json rep = report_envelope("shift closing", cfg.str());
    rep["report"] = json{{"n", r.n},
                         {"eps", r.eps.str()},
                         {"stepBound", r.step_bound.str()},
                         {"stepsExact", r.steps_exact},
                         {"branchRefuted", r.branch_refuted},
                         {"gapEmpty", r.gap_empty},
                         {"passed", r.passed}};
    emit_json(out, rep);
  } else {
    out << "n=" << r.n << " eps=" << r.eps.str()
        << " step bound=" << r.step_bound.str()
        << " steps exact=" << r.steps_exact
        << " branch refuted=" << r.branch_refuted
        << " gap empty=" << r.gap_empty
        << " passed=" << (r.passed ? "yes" : "NO") << "\n";
  }
  return r.passed ? 0 : 3;
}

// convert -----------------------------------------------------------------

struct ConvertOpts {
  std::string in, outPath;
};

int cmd_convert(const ConvertOpts& o, std::ostream& out) {
  json j = read_json_file(o.in);
  json result;
  if (j.contains("points"))
    result = planar_relation_to_json(finite_to_planar(finite_system_from_json(j)));
  else if (j.contains("domain"))
    result = finite_system_to_json(planar_to_finite(planar_relation_from_json(j)));
  else
    throw std::invalid_argument(
        o.in + ": neither a finite-system nor a planar-relation file");
  if (o.outPath.empty()) {
    emit_json(out, result);
  } else {
    std::ofstream f(o.outPath);
    if (!f) throw std::invalid_argument(o.outPath + ": cannot write");
    f << result.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"decision tools for set-valued shadowing"};
  app.require_subcommand(1);
  auto formatCheck = CLI::IsMember({"json", "markdown-table"});

  DecideOpts dOpt;
  CLI::App* decide = app.add_subcommand(
      "decide", "decide the four shadowing properties of a finite system");
  decide->add_option("--in", dOpt.in, "finite-system JSON file")->required();
  decide->add_option("--property", dOpt.property, "single property i,j");
  decide->add_flag("--inverse", dOpt.inverse, "decide the inverse relation");
  decide->add_option("--check-witness", dOpt.witnessPath,
                     "revalidate a witness lasso file against --property");
  decide->add_option("--format", dOpt.format)->check(formatCheck);

  AuditOpts aOpt;
  CLI::App* audit = app.add_subcommand(
      "audit", "randomized implication, power and oracle audits");
  audit->add_option("--count", aOpt.count, "number of systems")
      ->required()
      ->check(CLI::PositiveNumber);
  audit->add_option("--size", aOpt.size, "maximum point count")
      ->required()
      ->check(CLI::PositiveNumber);
  audit->add_option("--seed", aOpt.seed, "sampler seed")->required();
  audit->add_option("--kmax", aOpt.kmax, "power audit depth")
      ->check(CLI::PositiveNumber);
  audit->add_flag("--oracle", aOpt.oracle,
                  "cross-check the decider against the bounded falsifier");
  audit->add_option("--format", aOpt.format)->check(formatCheck);

  GalleryOpts gOpt;
  CLI::App* gallery = app.add_subcommand("gallery", "curated example systems");
  gallery->require_subcommand(1);
  CLI::App* galleryList = gallery->add_subcommand("list", "stable item names");
  GalleryOpts gListOpt;
  galleryList->add_option("--format", gListOpt.format)->check(formatCheck);
  CLI::App* galleryRun =
      gallery->add_subcommand("run", "run item claims (all items if unnamed)");
  galleryRun->add_option("name", gOpt.name, "item name");
  galleryRun->add_option("--param", gOpt.params, "item parameter key=value");
  galleryRun->add_option("--format", gOpt.format)->check(formatCheck);

  ShiftDemoOpts sdOpt;
  ShiftClosingOpts scOpt;
  CLI::App* shift = app.add_subcommand("shift", "sequence-space checks");
  shift->require_subcommand(1);
  CLI::App* shiftDemo = shift->add_subcommand(
      "demo", "bounded shift-shadowing demonstration");
  shiftDemo->add_option("--system", sdOpt.system, "finite-system JSON file");
  shiftDemo->add_flag("--search", sdOpt.search,
                      "run the demo over seeded random systems");
  shiftDemo->add_option("--count", sdOpt.count, "search: systems to sample")
      ->check(CLI::PositiveNumber);
  shiftDemo->add_option("--size", sdOpt.size, "search: maximum point count")
      ->check(CLI::PositiveNumber);
  CLI::Option* seedOpt = shiftDemo->add_option("--seed", sdOpt.seed);
  shiftDemo->add_option("--k", sdOpt.k, "eps exponent: eps = 2^-k")
      ->check(CLI::PositiveNumber);
  shiftDemo->add_option("--m", sdOpt.m, "candidate lasso length bound")
      ->check(CLI::PositiveNumber);
  shiftDemo->add_option("--format", sdOpt.format)->check(formatCheck);
  CLI::App* shiftClosing = shift->add_subcommand(
      "closing", "staircase refutation of shift shadowing");
  shiftClosing->add_option("--n", scOpt.n, "staircase steps")
      ->check(CLI::PositiveNumber);
  shiftClosing->add_option("--format", scOpt.format)->check(formatCheck);

  ConvertOpts cOpt;
  CLI::App* convert = app.add_subcommand(
      "convert", "finite system <-> isolated-point planar relation");
  convert->add_option("--in", cOpt.in, "input JSON file")->required();
  convert->add_option("--out", cOpt.outPath, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (decide->parsed()) return cmd_decide(dOpt, out);
    if (audit->parsed()) return cmd_audit(aOpt, out);
    if (gallery->parsed()) {
      if (galleryList->parsed()) {
        gListOpt.list = true;
        return cmd_gallery(gListOpt, out);
      }
      return cmd_gallery(gOpt, out);
    }
    if (shift->parsed()) {
      if (shiftDemo->parsed()) {
        sdOpt.seedSet = seedOpt->count() > 0;
        return cmd_shift_demo(sdOpt, out);
      }
      return cmd_shift_closing(scOpt, out);
    }
    if (convert->parsed()) return cmd_convert(cOpt, out);
  } catch (const FlaggedSystem& e) {
    err << "flagged system: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace crshadow
