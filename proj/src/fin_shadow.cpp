#include "crshadow/fin_shadow.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace crshadow {

namespace {

std::vector<PointId> mask_points(Mask m) {
  std::vector<PointId> out;
  for_bits(m, [&](PointId x) { out.push_back(x); });
  return out;
}

// Mask of legal points strictly inside the eps ball around center.
Mask strict_ball_points(const FiniteRelation& g, Mask legal, PointId center,
                        Rational eps) {
  Mask m = 0;
  for_bits(legal, [&](PointId y) {
    if (g.X().d(center, y) < eps) m |= bit(y);
  });
  return m;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= std::hash<std::uint64_t>{}(x);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace

ThresholdLadder threshold_ladder(const FiniteMetricSpace& space) {
  std::set<Rational> vals;
  for (int a = 0; a < space.size(); ++a)
    for (int b = a + 1; b < space.size(); ++b) vals.insert(space.d(a, b));
  ThresholdLadder l;
  l.values.assign(vals.begin(), vals.end());
  return l;
}

PseudoOrbitGraph pseudo_orbit_graph(const FiniteRelation& g, Rational delta,
                                    int mode) {
  if (mode != 1 && mode != 2)
    throw std::invalid_argument("pseudo-orbit mode must be 1 or 2");
  PseudoOrbitGraph p;
  p.nodes = nondegenerate_set(g);
  p.succ.assign(g.size(), 0);
  for_bits(p.nodes, [&](PointId x) {
    for_bits(p.nodes, [&](PointId x2) {
      bool edge = mode == 1;
      for_bits(g.succ[x], [&](PointId y) {
        bool close = g.X().d(y, x2) <= delta;
        edge = mode == 1 ? (edge && close) : (edge || close);
      });
      if (edge) p.succ[x] |= bit(x2);
    });
  });
  Mask live = p.nodes;
  for (;;) {
    Mask next = 0;
    for_bits(live, [&](PointId x) {
      if (p.succ[x] & live) next |= bit(x);
    });
    if (next == live) break;
    live = next;
  }
  p.live = live;
  return p;
}

bool is_pseudo_orbit(const FiniteRelation& g, const Lasso<PointId>& p,
                     Rational delta, int mode) {
  if (mode != 1 && mode != 2)
    throw std::invalid_argument("pseudo-orbit mode must be 1 or 2");
  Mask nd = nondegenerate_set(g);
  std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k)
    if (!has_bit(nd, p.at(k))) return false;
  for (std::size_t k = 0; k < n; ++k) {
    PointId x = p.at(k), x2 = p.at(k + 1);
    bool ok = mode == 1;
    for_bits(g.succ[x], [&](PointId y) {
      bool close = g.X().d(y, x2) <= delta;
      ok = mode == 1 ? (ok && close) : (ok || close);
    });
    if (!ok) return false;
  }
  return true;
}

std::optional<PointId> existential_shadower(const FiniteRelation& g,
                                            const Lasso<PointId>& p,
                                            Rational eps) {
  Mask legal = legal_set(g);
  if (!legal) return std::nullopt;
  std::vector<PointId> cands = mask_points(legal);
  std::vector<Mask> succL(g.size(), 0);
  for_bits(legal, [&](PointId x) { succL[x] = g.succ[x] & legal; });

  // frontier[c]: points reachable from candidate c along legal steps that
  // stayed strictly inside every ball so far.
  std::vector<Mask> frontier(cands.size());
  Mask ball0 = strict_ball_points(g, legal, p.at(0), eps);
  for (std::size_t c = 0; c < cands.size(); ++c)
    frontier[c] = has_bit(ball0, cands[c]) ? bit(cands[c]) : 0;

  std::unordered_map<std::vector<std::uint64_t>, std::size_t, VecHash> seen;
  for (std::size_t k = 0;; ++k) {
    bool any = false;
    for (Mask f : frontier) any = any || f;
    if (!any) return std::nullopt;
    if (k >= p.prefix.size()) {
      std::vector<std::uint64_t> key;
      key.push_back((k - p.prefix.size()) % p.cycle.size());
      key.insert(key.end(), frontier.begin(), frontier.end());
      auto [it, fresh] = seen.emplace(std::move(key), k);
      if (!fresh) {
        // State repeats: every still-alive candidate stays alive forever.
        for (std::size_t c = 0; c < cands.size(); ++c)
          if (frontier[c]) return cands[c];
      }
    }
    Mask ball = strict_ball_points(g, legal, p.at(k + 1), eps);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      Mask img = 0;
      for_bits(frontier[c], [&](PointId z) { img |= succL[z]; });
      frontier[c] = img & ball;
    }
  }
}

Mask universal_shadowers(const FiniteRelation& g, const Lasso<PointId>& p,
                         Rational eps) {
  Mask legal = legal_set(g);
  std::vector<Mask> succL(g.size(), 0);
  for_bits(legal, [&](PointId x) { succL[x] = g.succ[x] & legal; });
  Mask out = 0;
  for_bits(legal, [&](PointId y) {
    // Track (lasso position, step set) until the pair repeats; y qualifies
    // iff every step set stays inside its strict ball.
    Mask s = bit(y);
    std::set<std::pair<std::size_t, Mask>> seen;
    bool ok = true;
    for (std::size_t k = 0;; ++k) {
      Mask ball = strict_ball_points(g, legal, p.at(k), eps);
      if (s & ~ball) {
        ok = false;
        break;
      }
      if (k >= p.prefix.size()) {
        std::size_t pos = (k - p.prefix.size()) % p.cycle.size();
        if (!seen.insert({pos, s}).second) break;
      }
      Mask next = 0;
      for_bits(s, [&](PointId z) { next |= succL[z]; });
      s = next;
    }
    if (ok) out |= bit(y);
  });
  return out;
}

namespace {

ShadowingInstance lower_to_instance(const FiniteRelation& g) {
  Mask nd = nondegenerate_set(g);
  Mask legal = legal_set(g);
  if (!legal) throw FlaggedSystem("legal set is empty");
  std::vector<PointId> nodes = mask_points(nd);
  std::vector<PointId> cands = mask_points(legal);
  std::unordered_map<PointId, int> cand_index;
  for (std::size_t c = 0; c < cands.size(); ++c) cand_index[cands[c]] = (int)c;

  ShadowingInstance inst;
  for (PointId x : nodes) inst.node_label.push_back(g.X().labels[x]);
  for (PointId y : cands) inst.cand_label.push_back(g.X().labels[y]);
  inst.min_gap.assign(nodes.size(), {});
  inst.max_gap.assign(nodes.size(), {});
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      Rational lo, hi;
      bool first = true;
      for_bits(g.succ[nodes[a]], [&](PointId y) {
        Rational d = g.X().d(y, nodes[b]);
        if (first) {
          lo = hi = d;
          first = false;
        } else {
          lo = min(lo, d);
          hi = max(hi, d);
        }
      });
      inst.min_gap[a].push_back(lo);
      inst.max_gap[a].push_back(hi);
    }
  }
  inst.cand_succ.assign(cands.size(), 0);
  for (std::size_t c = 0; c < cands.size(); ++c)
    for_bits(g.succ[cands[c]] & legal, [&](PointId y) {
      inst.cand_succ[c] |= bit(cand_index[y]);
    });
  inst.dist.assign(nodes.size(), {});
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (PointId y : cands) inst.dist[a].push_back(g.X().d(nodes[a], y));
  inst.ladder = threshold_ladder(g.X()).values;
  return inst;
}

Lasso<PointId> witness_to_points(const Lasso<int>& w,
                                 const std::vector<PointId>& nodes) {
  std::vector<PointId> p, c;
  for (int v : w.prefix) p.push_back(nodes[v]);
  for (int v : w.cycle) c.push_back(nodes[v]);
  Lasso<PointId> out(std::move(p), std::move(c));
  out.canonicalize();
  return out;
}

}  // namespace

FinVerdict decide_shadowing(const FiniteRelation& g, int i, int j) {
  ShadowingInstance inst = lower_to_instance(g);
  std::vector<PointId> nodes = mask_points(nondegenerate_set(g));
  Verdict core = decide_instance(inst, i, j);
  FinVerdict v;
  v.i = i;
  v.j = j;
  v.holds = core.holds;
  v.schedule = std::move(core.schedule);
  v.eps_star = core.eps_star;
  if (core.witness) v.witness = witness_to_points(*core.witness, nodes);
  return v;
}

std::optional<Lasso<PointId>> shadowing_failure_at(const FiniteRelation& g,
                                                   int i, int j, Rational eps,
                                                   Rational delta) {
  ShadowingInstance inst = lower_to_instance(g);
  std::vector<PointId> nodes = mask_points(nondegenerate_set(g));
  auto wit = instance_failure_at(inst, i, j, eps, delta);
  if (!wit) return std::nullopt;
  return witness_to_points(*wit, nodes);
}

std::optional<Lasso<PointId>> falsify_bounded(const FiniteRelation& g, int i,
                                              int j, Rational eps,
                                              Rational delta, int maxLen,
                                              long workBudget) {
  PseudoOrbitGraph graph = pseudo_orbit_graph(g, delta, i);
  if (!graph.live) return std::nullopt;
  std::vector<PointId> live = mask_points(graph.live);
  long work = 0;
  std::set<Lasso<PointId>> tried;
  std::optional<Lasso<PointId>> found;
  std::vector<PointId> walk;

  auto unshadowed = [&](const Lasso<PointId>& cand) {
    if (j == 2) return !existential_shadower(g, cand, eps).has_value();
    return universal_shadowers(g, cand, eps) == 0;
  };

  // Walks enumerated lexicographically per length; each valid cycle split
  // (ascending) closes a lasso candidate.
  std::function<void(int)> dfs = [&](int len) {
    if (found || work > workBudget) return;
    ++work;
    if ((int)walk.size() == len) {
      for (std::size_t s = 0; s < walk.size(); ++s) {
        if (!has_bit(graph.succ[walk.back()], walk[s])) continue;
        Lasso<PointId> cand(
            std::vector<PointId>(walk.begin(), walk.begin() + s),
            std::vector<PointId>(walk.begin() + s, walk.end()));
        cand.canonicalize();
        if (!tried.insert(cand).second) continue;
        if (unshadowed(cand)) {
          found = cand;
          return;
        }
      }
      return;
    }
    if (walk.empty()) {
      for (PointId v : live) {
        walk.push_back(v);
        dfs(len);
        walk.pop_back();
        if (found) return;
      }
    } else {
      for_bits(graph.succ[walk.back()] & graph.live, [&](PointId v) {
        if (found || work > workBudget) return;
        walk.push_back(v);
        dfs(len);
        walk.pop_back();
      });
    }
  };
  for (int len = 1; len <= maxLen && !found && work <= workBudget; ++len)
    dfs(len);
  return found;
}

ImplicationAudit implication_audit(const FiniteRelation& g) {
  ImplicationAudit a;
  a.verdicts[0] = decide_shadowing(g, 1, 1);
  a.verdicts[1] = decide_shadowing(g, 1, 2);
  a.verdicts[2] = decide_shadowing(g, 2, 1);
  a.verdicts[3] = decide_shadowing(g, 2, 2);
  auto holds = [&](int i, int j) {
    for (const auto& v : a.verdicts)
      if (v.i == i && v.j == j) return v.holds;
    return false;
  };
  auto check = [&](int i1, int j1, int i2, int j2) {
    if (holds(i1, j1) && !holds(i2, j2))
      a.violations.push_back("(" + std::to_string(i1) + "," +
                             std::to_string(j1) + ") holds but (" +
                             std::to_string(i2) + "," + std::to_string(j2) +
                             ") fails");
  };
  check(2, 1, 1, 1);
  check(2, 1, 2, 2);
  check(1, 1, 1, 2);
  check(2, 2, 1, 2);
  a.ok = a.violations.empty();
  return a;
}

PowerAudit power_audit(const FiniteRelation& g, int kmax) {
  PowerAudit a;
  a.kmax = kmax;
  Mask legal_g = legal_set(g);
  bool tower = true;
  std::vector<FiniteRelation> powers = {g};
  for (int k = 2; k <= kmax; ++k) powers.push_back(relation_power(g, k));
  for (int k = 2; k <= kmax; ++k) {
    const FiniteRelation& gk = powers[k - 1];
    for (PointId x = 0; x < g.size(); ++x)
      if (powers[k - 2].succ[x] & ~gk.succ[x]) tower = false;
    if (legal_set(gk) != legal_g)
      a.violations.push_back("legal set changed at power " + std::to_string(k));
    for (int j = 1; j <= 2; ++j) {
      bool vg = decide_shadowing(g, 2, j).holds;
      bool vk = decide_shadowing(gk, 2, j).holds;
      // One-directional by design: a power can gain (2,j) while the base
      // fails it (a multivalued relation whose square is single-valued).
      if (vg && !vk)
        a.violations.push_back("(2," + std::to_string(j) +
                               ") lost at power " + std::to_string(k));
    }
  }
  if (tower && kmax >= 2) {
    bool v12 = decide_shadowing(g, 1, 2).holds;
    if (v12)
      for (int k = 2; k <= kmax; ++k)
        if (!decide_shadowing(powers[k - 1], 1, 2).holds)
          a.violations.push_back("(1,2) did not propagate to power " +
                                 std::to_string(k) +
                                 " under the tower condition");
  }
  a.ok = a.violations.empty();
  return a;
}

}  // namespace crshadow
