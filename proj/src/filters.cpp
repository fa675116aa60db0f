#include "crshadow/filters.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace crshadow {
namespace {

const Rational kZero{0, 1};

void check_entries(const PlanarRelation& r, const Lasso<Rational>& p) {
  for (auto& x : p.prefix)
    if (!r.domain.contains(x)) throw FlaggedSystem("lasso escapes the domain");
  for (auto& x : p.cycle)
    if (!r.domain.contains(x)) throw FlaggedSystem("lasso escapes the domain");
}

// Smallest positive gap among the values the filters compare: lasso
// entries, domain and primitive endpoints.
Rational min_value_gap(const PlanarRelation& r, const Lasso<Rational>& p,
                       const Rational& fallback) {
  std::set<Rational> vals;
  for (auto& x : p.prefix) vals.insert(x);
  for (auto& x : p.cycle) vals.insert(x);
  for (auto& v : endpoints(r.domain)) vals.insert(v);
  for (auto& prim : r.prims) {
    vals.insert(prim.xs.lo);
    vals.insert(prim.xs.hi);
    if (prim.graph) {
      vals.insert(prim.a * prim.xs.lo + prim.b);
      vals.insert(prim.a * prim.xs.hi + prim.b);
    } else {
      vals.insert(prim.ys.lo);
      vals.insert(prim.ys.hi);
    }
  }
  std::optional<Rational> gap;
  std::optional<Rational> prev;
  for (auto& v : vals) {
    if (prev) {
      Rational d = v - *prev;
      if (kZero < d && (!gap || d < *gap)) gap = d;
    }
    prev = v;
  }
  return gap ? *gap : fallback;
}

struct RunOutcome {
  bool empty_at = false;
  int step = -1;
  bool repeated = false;
  std::vector<IntervalSet> trace;
};

// Iterates frontiers against the lasso until empty, repeat, or cap.
RunOutcome run_frontiers(const PlanarRelation& r, const Lasso<Rational>& p,
                         const IntervalSet& legal, const Rational& radius,
                         bool strict, int maxCyclePasses) {
  const int pref = (int)p.prefix.size(), cyc = (int)p.cycle.size();
  auto ball = [&](int k) {
    const Rational& c = p.at(k);
    return strict ? strict_ball(c, radius, r.domain)
                  : closed_ball(c, radius, r.domain);
  };
  RunOutcome out;
  std::map<int, std::vector<IntervalSet>> seen;
  const long maxSteps = pref + (long)maxCyclePasses * cyc;
  IntervalSet t = intersect(ball(0), legal);
  for (long k = 0;; k++) {
    out.trace.push_back(t);
    if (t.is_empty()) {
      out.empty_at = true;
      out.step = (int)k;
      return out;
    }
    if (k >= pref) {
      auto& states = seen[(int)((k - pref) % cyc)];
      for (auto& s : states)
        if (s == t) {
          out.repeated = true;
          return out;
        }
      states.push_back(t);
    }
    if (k >= maxSteps) return out;
    t = intersect(intersect(image(r, t), ball((int)k + 1)), legal);
  }
}

}  // namespace

bool planar_pseudo_orbit(const PlanarRelation& r, const Lasso<Rational>& p,
                         Rational delta, int mode) {
  check_entries(r, p);
  const int total = (int)p.prefix.size() + (int)p.cycle.size();
  for (int k = 0; k < total; k++) {
    IntervalSet fiber = image(r, IntervalSet::point(p.at(k)));
    auto gap = mode == 1 ? sup_dist(fiber, p.at(k + 1))
                         : inf_dist(fiber, p.at(k + 1));
    if (!gap || delta < *gap) return false;
  }
  return true;
}

ForwardResult forward_filter(const PlanarRelation& r, const Lasso<Rational>& p,
                             Rational eps, int maxCyclePasses) {
  check_entries(r, p);
  if (!(kZero < eps)) throw FlaggedSystem("eps must be positive");
  LegalResult legal = legal_iterate(r, 64);

  ForwardResult res;
  RunOutcome strictRun =
      run_frontiers(r, p, legal.set, eps, true, maxCyclePasses);
  res.trace = strictRun.trace;
  if (strictRun.empty_at) {
    res.verdict = ForwardVerdict::noShadower;
    res.fail_step = strictRun.step;
    return res;
  }
  if (strictRun.repeated && legal.converged) {
    Rational eta = min_value_gap(r, p, eps) / Rational{4, 1};
    Rational half = eps / Rational{2, 1};
    if (half < eta) eta = half;
    RunOutcome closedRun =
        run_frontiers(r, p, legal.set, eps - eta, false, maxCyclePasses);
    if (closedRun.repeated) res.verdict = ForwardVerdict::shadowerExists;
  }
  return res;
}

UniversalResult universal_filter(const PlanarRelation& r,
                                 const Lasso<Rational>& p, Rational eps,
                                 int maxIter) {
  check_entries(r, p);
  if (!(kZero < eps)) throw FlaggedSystem("eps must be positive");
  LegalResult legal = legal_iterate(r, 64);
  const IntervalSet& L = legal.set;
  IntervalSet offLegal = subtract(r.domain, L);
  // R_L(x) subset of S, for x in L: successors may leave L only.
  auto upreL = [&](const IntervalSet& s) {
    return intersect(L, universal_preimage(r, unite(s, offLegal)));
  };

  const int pref = (int)p.prefix.size(), cyc = (int)p.cycle.size();
  std::vector<IntervalSet> v(cyc);
  for (int pos = 0; pos < cyc; pos++)
    v[pos] = intersect(strict_ball(p.at(pref + pos), eps, r.domain), L);
  bool stable = false;
  for (int sweep = 0; sweep < maxIter && !stable; sweep++) {
    stable = true;
    for (int pos = cyc - 1; pos >= 0; pos--) {
      IntervalSet next = intersect(v[pos], upreL(v[(pos + 1) % cyc]));
      if (!(next == v[pos])) {
        v[pos] = std::move(next);
        stable = false;
      }
    }
  }
  IntervalSet u = v[0];
  for (int k = pref - 1; k >= 0; k--)
    u = intersect(intersect(strict_ball(p.at(k), eps, r.domain), L), upreL(u));
  return {std::move(u), stable && legal.converged};
}

std::vector<Rational> finite_nd_points(const PlanarRelation& r) {
  IntervalSet nd = nd_set(r);
  std::vector<Rational> pts;
  for (auto& iv : nd.comps) {
    if (!(iv.lo == iv.hi))
      throw FlaggedSystem("non-degenerate set is not a finite point set");
    pts.push_back(iv.lo);
  }
  return pts;
}

ShadowingInstance finite_nd_instance(const PlanarRelation& r) {
  std::vector<Rational> nodes = finite_nd_points(r);
  LegalResult legal = legal_iterate(r, 64);
  if (!legal.converged) throw FlaggedSystem("legality iteration did not converge");
  std::vector<Rational> cands;
  for (auto& iv : legal.set.comps) {
    if (!(iv.lo == iv.hi))
      throw FlaggedSystem("legal set is not a finite point set");
    cands.push_back(iv.lo);
  }
  const int n = (int)nodes.size(), c = (int)cands.size();
  if (c > (int)kMaxPoints) throw FlaggedSystem("too many legal points");

  ShadowingInstance inst;
  std::set<Rational> ladder;
  std::vector<IntervalSet> fibers;
  for (auto& x : nodes) {
    inst.node_label.push_back(x.str());
    fibers.push_back(image(r, IntervalSet::point(x)));
  }
  inst.min_gap.assign(n, std::vector<Rational>(n));
  inst.max_gap.assign(n, std::vector<Rational>(n));
  for (int x = 0; x < n; x++)
    for (int y = 0; y < n; y++) {
      inst.min_gap[x][y] = *inf_dist(fibers[x], nodes[y]);
      inst.max_gap[x][y] = *sup_dist(fibers[x], nodes[y]);
      ladder.insert(inst.min_gap[x][y]);
      ladder.insert(inst.max_gap[x][y]);
    }
  for (auto& y : cands) inst.cand_label.push_back(y.str());
  inst.cand_succ.assign(c, 0);
  for (int a = 0; a < c; a++)
    for (int b2 = 0; b2 < c; b2++)
      if (r.member(cands[a], cands[b2])) inst.cand_succ[a] |= bit(b2);
  inst.dist.assign(n, std::vector<Rational>(c));
  for (int x = 0; x < n; x++)
    for (int y = 0; y < c; y++) {
      inst.dist[x][y] = abs(nodes[x] - cands[y]);
      ladder.insert(inst.dist[x][y]);
    }
  for (auto& t : ladder)
    if (kZero < t) inst.ladder.push_back(t);
  return inst;
}

}  // namespace crshadow
