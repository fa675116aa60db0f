#include "crshadow/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace crshadow {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    fail(std::string(where) + ": missing field '" + key + "'");
  return j.at(key);
}

std::string str_at(const json& j, const char* where) {
  if (!j.is_string()) fail(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

Rational rat_at(const json& j, const char* where) {
  try {
    return parse_rational(str_at(j, where));
  } catch (const std::invalid_argument& e) {
    fail(std::string(where) + ": " + e.what());
  }
}

Interval closed_at(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    fail(std::string(where) + ": expected [lo, hi]");
  Rational lo = rat_at(j[0], where), hi = rat_at(j[1], where);
  if (hi < lo) fail(std::string(where) + ": lo exceeds hi");
  return Interval::closed(lo, hi);
}

json ivl_json(const Interval& v) {
  return json::array({v.lo.str(), v.hi.str()});
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

FiniteRelation finite_system_from_json(const nlohmann::json& j) {
  const json& pts = field(j, "points", "finite system");
  if (!pts.is_array() || pts.size() < 1) fail("points: expected a nonempty array");
  std::vector<std::string> labels;
  for (const json& p : pts) labels.push_back(str_at(p, "points"));

  const json& metric = field(j, "metric", "finite system");
  std::string type = str_at(field(metric, "type", "metric"), "metric.type");
  FiniteMetricSpace space;
  if (type == "line") {
    const json& coords = field(metric, "coords", "metric");
    std::vector<Rational> xs;
    for (const std::string& lab : labels) {
      if (!coords.contains(lab)) fail("metric.coords: no coordinate for '" + lab + "'");
      xs.push_back(rat_at(coords.at(lab), "metric.coords"));
    }
    space = FiniteMetricSpace::from_line(labels, xs);
  } else if (type == "matrix") {
    const json& dist = field(metric, "dist", "metric");
    if (!dist.is_array() || dist.size() != labels.size())
      fail("metric.dist: expected one row per point");
    std::vector<std::vector<Rational>> d;
    for (const json& row : dist) {
      if (!row.is_array() || row.size() != labels.size())
        fail("metric.dist: expected square matrix");
      std::vector<Rational> r;
      for (const json& c : row) r.push_back(rat_at(c, "metric.dist"));
      d.push_back(std::move(r));
    }
    space = FiniteMetricSpace::from_matrix(labels, std::move(d));
  } else {
    fail("metric.type: expected 'line' or 'matrix'");
  }

  const json& rel = field(j, "relation", "finite system");
  if (!rel.is_array()) fail("relation: expected an array of pairs");
  std::vector<std::pair<PointId, PointId>> pairs;
  for (const json& e : rel) {
    if (!e.is_array() || e.size() != 2) fail("relation: entries are [from, to]");
    try {
      pairs.emplace_back(space.index_of(str_at(e[0], "relation")),
                         space.index_of(str_at(e[1], "relation")));
    } catch (const std::invalid_argument& err) {
      fail(std::string("relation: ") + err.what());
    }
  }
  auto sp = std::make_shared<const FiniteMetricSpace>(std::move(space));
  return FiniteRelation::make(sp, pairs);
}

nlohmann::json finite_system_to_json(const FiniteRelation& g) {
  const FiniteMetricSpace& sp = g.X();
  json dist = json::array();
  for (int x = 0; x < sp.size(); ++x) {
    json row = json::array();
    for (int y = 0; y < sp.size(); ++y) row.push_back(sp.d(x, y).str());
    dist.push_back(std::move(row));
  }
  json rel = json::array();
  for (auto [x, y] : g.pairs())
    rel.push_back(json::array({sp.labels[x], sp.labels[y]}));
  return json{{"points", sp.labels},
              {"metric", {{"type", "matrix"}, {"dist", std::move(dist)}}},
              {"relation", std::move(rel)}};
}

PlanarRelation planar_relation_from_json(const nlohmann::json& j) {
  const json& dom = field(j, "domain", "planar relation");
  if (!dom.is_array() || dom.empty()) fail("domain: expected a nonempty array");
  std::vector<Interval> comps;
  for (const json& c : dom) comps.push_back(closed_at(c, "domain"));

  const json& prims = field(j, "primitives", "planar relation");
  if (!prims.is_array()) fail("primitives: expected an array");
  std::vector<Primitive> ps;
  for (const json& p : prims) {
    std::string kind = str_at(field(p, "kind", "primitive"), "primitive.kind");
    if (kind == "point")
      ps.push_back(Primitive::point(rat_at(field(p, "x", "point"), "point.x"),
                                    rat_at(field(p, "y", "point"), "point.y")));
    else if (kind == "vline")
      ps.push_back(Primitive::vline(rat_at(field(p, "c", "vline"), "vline.c"),
                                    closed_at(field(p, "J", "vline"), "vline.J")));
    else if (kind == "hline")
      ps.push_back(Primitive::hline(closed_at(field(p, "I", "hline"), "hline.I"),
                                    rat_at(field(p, "c", "hline"), "hline.c")));
    else if (kind == "box")
      ps.push_back(Primitive::box(closed_at(field(p, "I", "box"), "box.I"),
                                  closed_at(field(p, "J", "box"), "box.J")));
    else if (kind == "diag")
      ps.push_back(Primitive::diag(closed_at(field(p, "I", "diag"), "diag.I")));
    else if (kind == "affine")
      ps.push_back(Primitive::affine(closed_at(field(p, "I", "affine"), "affine.I"),
                                     rat_at(field(p, "a", "affine"), "affine.a"),
                                     rat_at(field(p, "b", "affine"), "affine.b")));
    else
      fail("primitive.kind: unknown kind '" + kind + "'");
  }
  return PlanarRelation::make(IntervalSet::of(comps), std::move(ps));
}

nlohmann::json planar_relation_to_json(const PlanarRelation& r) {
  json dom = json::array();
  for (const Interval& c : r.domain.comps) dom.push_back(ivl_json(c));
  json prims = json::array();
  for (const Primitive& p : r.prims) {
    std::string kind = p.kind();
    json e{{"kind", kind}};
    if (kind == "point") {
      e["x"] = p.xs.lo.str();
      e["y"] = p.ys.lo.str();
    } else if (kind == "vline") {
      e["c"] = p.xs.lo.str();
      e["J"] = ivl_json(p.ys);
    } else if (kind == "hline") {
      e["I"] = ivl_json(p.xs);
      e["c"] = p.ys.lo.str();
    } else if (kind == "box") {
      e["I"] = ivl_json(p.xs);
      e["J"] = ivl_json(p.ys);
    } else if (kind == "diag") {
      e["I"] = ivl_json(p.xs);
    } else {
      e["I"] = ivl_json(p.xs);
      e["a"] = p.a.str();
      e["b"] = p.b.str();
    }
    prims.push_back(std::move(e));
  }
  return json{{"domain", std::move(dom)}, {"primitives", std::move(prims)}};
}

nlohmann::json lasso_to_json(const FiniteMetricSpace& space,
                             const Lasso<PointId>& w) {
  json pre = json::array(), cyc = json::array();
  for (PointId p : w.prefix) pre.push_back(space.labels[p]);
  for (PointId p : w.cycle) cyc.push_back(space.labels[p]);
  return json{{"prefix", std::move(pre)}, {"cycle", std::move(cyc)}};
}

Lasso<PointId> lasso_from_json(const FiniteMetricSpace& space,
                               const nlohmann::json& j) {
  const json& pre = field(j, "prefix", "lasso");
  const json& cyc = field(j, "cycle", "lasso");
  if (!pre.is_array() || !cyc.is_array() || cyc.empty())
    fail("lasso: prefix/cycle arrays required, cycle nonempty");
  std::vector<PointId> p, c;
  try {
    for (const json& e : pre) p.push_back(space.index_of(str_at(e, "lasso")));
    for (const json& e : cyc) c.push_back(space.index_of(str_at(e, "lasso")));
  } catch (const std::invalid_argument& err) {
    fail(std::string("lasso: ") + err.what());
  }
  Lasso<PointId> w(std::move(p), std::move(c));
  w.canonicalize();
  return w;
}

nlohmann::json verdict_to_json(const FiniteMetricSpace& space,
                               const FinVerdict& v) {
  json out{{"property", std::to_string(v.i) + "," + std::to_string(v.j)},
           {"holds", v.holds}};
  json sched = json::array();
  for (const ScheduleEntry& s : v.schedule)
    sched.push_back(json{{"eps", s.eps.str()}, {"delta", s.delta.str()}});
  out["schedule"] = std::move(sched);
  if (v.eps_star) out["epsilonStar"] = v.eps_star->str();
  if (v.witness) out["witness"] = lasso_to_json(space, *v.witness);
  return out;
}

PlanarRelation finite_to_planar(const FiniteRelation& g) {
  const FiniteMetricSpace& sp = g.X();
  std::vector<Rational> coord;
  for (const std::string& lab : sp.labels) {
    try {
      coord.push_back(parse_rational(lab));
    } catch (const std::invalid_argument&) {
      fail("planar conversion needs rational point labels, got '" + lab + "'");
    }
  }
  for (int x = 0; x < sp.size(); ++x)
    for (int y = 0; y < sp.size(); ++y)
      if (sp.d(x, y) != abs(coord[x] - coord[y]))
        fail("planar conversion needs a line-embedded metric");
  std::vector<Interval> dom;
  for (const Rational& c : coord) dom.push_back(Interval::point(c));
  std::vector<Primitive> ps;
  for (auto [x, y] : g.pairs()) ps.push_back(Primitive::point(coord[x], coord[y]));
  return PlanarRelation::make(IntervalSet::of(dom), std::move(ps));
}

FiniteRelation planar_to_finite(const PlanarRelation& r) {
  std::vector<Rational> coord;
  for (const Interval& c : r.domain.comps) {
    if (!(c.lo == c.hi)) fail("finite conversion needs a point domain");
    coord.push_back(c.lo);
  }
  std::map<Rational, PointId> id;
  std::vector<std::string> labels;
  for (const Rational& c : coord) {
    id.emplace(c, (PointId)labels.size());
    labels.push_back(c.str());
  }
  std::vector<std::pair<PointId, PointId>> pairs;
  for (const Primitive& p : r.prims) {
    if (p.kind() != "point")
      fail("finite conversion needs point-shaped primitives, got " + p.str());
    pairs.emplace_back(id.at(p.xs.lo), id.at(p.ys.lo));
  }
  auto sp = std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_line(labels, coord));
  return FiniteRelation::make(sp, pairs);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

nlohmann::json report_envelope(const std::string& command,
                               const std::string& config) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                (unsigned long long)fnv1a64(config));
  return nlohmann::json{
      {"version", "0.1.0"}, {"configHash", hex}, {"command", command}};
}

}  // namespace crshadow
