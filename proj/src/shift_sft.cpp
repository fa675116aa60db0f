#include "crshadow/shift_sft.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "crshadow/interval_set.hpp"
#include "crshadow/planar_relation.hpp"

namespace crshadow {
namespace {

// Largest preperiod + period the geometric closed form evaluates without
// leaving int64 rationals.
constexpr std::size_t kRhoBits = 55;

std::string lasso_str(const FiniteMetricSpace& space,
                      const Lasso<PointId>& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.prefix.size(); ++i) {
    if (i) os << ' ';
    os << space.labels[w.prefix[i]];
  }
  os << " | ";
  for (std::size_t i = 0; i < w.cycle.size(); ++i) {
    if (i) os << ' ';
    os << space.labels[w.cycle[i]];
  }
  os << ')';
  return os.str();
}

// Exact sum of d_k / 2^(k+1) for an eventually periodic distance sequence,
// given any valid preperiod/period; the minimal ones are recovered first so
// degenerate tails (eventually equal sequences) stay cheap.
template <class DistAt>
Rational rho_sum(DistAt dist_at, std::size_t pre0, std::size_t per0) {
  std::vector<Rational> d(pre0 + 2 * per0);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = dist_at(k);

  std::size_t per = per0;
  for (std::size_t p = 1; p < per0; ++p) {
    if (per0 % p != 0) continue;
    bool ok = true;
    for (std::size_t j = pre0; j < pre0 + per0 && ok; ++j)
      ok = d[j] == d[j + p];
    if (ok) {
      per = p;
      break;
    }
  }
  std::size_t pre = pre0;
  while (pre > 0 && d[pre - 1] == d[pre - 1 + per]) --pre;

  if (pre + per > kRhoBits)
    throw FlaggedSystem("rho needs precision beyond the exact range");

  Rational total;
  for (std::size_t k = 0; k < pre; ++k)
    total += d[k] * pow2_inverse((int)k + 1);
  Rational block;
  for (std::size_t r = 0; r < per; ++r)
    block += d[pre + r] * pow2_inverse((int)r + 1);
  // Tail = block * 2^-pre * 2^per / (2^per - 1).
  std::int64_t p2 = std::int64_t(1) << per;
  total += block * pow2_inverse((int)pre) * Rational(p2, p2 - 1);
  return total;
}

}  // namespace

EdgeShift edge_shift(const FiniteRelation& g) {
  Mask legal = legal_set(g);
  if (legal == 0) throw FlaggedSystem("empty legal set");
  EdgeShift shift;
  shift.alphabet = legal;
  shift.allowed.assign(g.size(), 0);
  for_bits(legal, [&](PointId x) { shift.allowed[x] = g.fiber(x) & legal; });
  return shift;
}

bool ForbiddenWordSet::forbids(PointId x, PointId y) const {
  return std::binary_search(words.begin(), words.end(), std::make_pair(x, y));
}

ForbiddenWordSet forbidden_words(const FiniteRelation& g) {
  EdgeShift shift = edge_shift(g);
  ForbiddenWordSet f;
  f.alphabet = shift.alphabet;
  for_bits(shift.alphabet, [&](PointId x) {
    for_bits(shift.alphabet, [&](PointId y) {
      if (!has_bit(shift.allowed[x], y)) f.words.emplace_back(x, y);
    });
  });
  return f;
}

bool sft_member(const Lasso<PointId>& w, const ForbiddenWordSet& f) {
  auto check_letter = [&](PointId x) {
    if (x < 0 || x >= kMaxPoints || !has_bit(f.alphabet, x))
      throw std::invalid_argument("letter outside the shift alphabet");
  };
  for (PointId x : w.prefix) check_letter(x);
  for (PointId x : w.cycle) check_letter(x);
  // Consecutive pairs of the denoted sequence: prefix, one cycle pass, and
  // the wrap back to the cycle head.
  for (std::size_t k = 0; k < w.size(); ++k)
    if (f.forbids(w.at(k), w.at(k + 1))) return false;
  return true;
}

Rational rho(const FiniteMetricSpace& space, const Lasso<PointId>& a,
             const Lasso<PointId>& b) {
  Lasso<PointId> ca = a.canonical(), cb = b.canonical();
  std::size_t pre = std::max(ca.prefix.size(), cb.prefix.size());
  std::size_t per = std::lcm(ca.cycle.size(), cb.cycle.size());
  return rho_sum(
      [&](std::size_t k) { return space.d(ca.at(k), cb.at(k)); }, pre, per);
}

Rational rho_line(const Lasso<Rational>& a, const Lasso<Rational>& b) {
  Lasso<Rational> ca = a.canonical(), cb = b.canonical();
  std::size_t pre = std::max(ca.prefix.size(), cb.prefix.size());
  std::size_t per = std::lcm(ca.cycle.size(), cb.cycle.size());
  return rho_sum(
      [&](std::size_t k) { return abs(ca.at(k) - cb.at(k)); }, pre, per);
}

std::vector<Lasso<PointId>> allowed_lassos(const FiniteRelation& g,
                                           int maxLen) {
  if (maxLen < 1) throw std::invalid_argument("maxLen must be positive");
  EdgeShift shift = edge_shift(g);
  std::set<Lasso<PointId>> out;
  std::vector<PointId> path;

  // Walks up to maxLen letters with every step allowed; each edge from the
  // walk end back to a walk position closes a lasso.
  auto dfs = [&](auto&& self, PointId last) -> void {
    for_bits(shift.allowed[last], [&](PointId y) {
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] != y) continue;
        Lasso<PointId> w(
            std::vector<PointId>(path.begin(), path.begin() + i),
            std::vector<PointId>(path.begin() + i, path.end()));
        w.canonicalize();
        out.insert(w);
      }
      if ((int)path.size() < maxLen) {
        path.push_back(y);
        self(self, y);
        path.pop_back();
      }
    });
  };
  for_bits(shift.alphabet, [&](PointId x) {
    path.assign(1, x);
    dfs(dfs, x);
  });
  return std::vector<Lasso<PointId>>(out.begin(), out.end());
}

ShiftDemoReport shift_shadowing_demo(const FiniteRelation& g, int k, int m) {
  if (k < 0 || m < 1) throw std::invalid_argument("need k >= 0 and m >= 1");
  ShiftDemoReport rep;
  rep.k = k;
  rep.m = m;
  rep.eps = pow2_inverse(k);
  rep.delta = pow2_inverse(k + 2);

  const FiniteMetricSpace& space = g.X();
  FiniteRelation gl = restrict_to_legal(g);
  std::vector<Lasso<PointId>> cand = allowed_lassos(g, m);
  rep.candidates = (int)cand.size();

  // H-edges: one admissible delta-jump of the shift between candidates.
  int n = (int)cand.size();
  std::vector<std::vector<int>> jump(n);
  for (int u = 0; u < n; ++u) {
    Lasso<PointId> su = shift_apply(cand[u]);
    for (int v = 0; v < n; ++v)
      if (!(rep.delta < rho(space, su, cand[v]))) jump[u].push_back(v);
  }

  // Pseudo-orbits: at most two jumps, then the exact orbit of the last
  // element (zero-jump tail), so every one is a genuine delta-pseudo-orbit.
  std::vector<std::vector<int>> orbits;
  for (int u = 0; u < n; ++u) {
    orbits.push_back({u});
    for (int v : jump[u]) {
      orbits.push_back({u, v});
      for (int w : jump[v]) orbits.push_back({u, v, w});
    }
  }
  rep.pseudo_orbits = (int)orbits.size();

  for (const std::vector<int>& heads : orbits) {
    const Lasso<PointId>& last = cand[heads.back()];
    std::size_t tail0 = heads.size() - 1;  // orbit tail starts here
    // Element of the pseudo-orbit at step N.
    auto po_at = [&](std::size_t N) -> Lasso<PointId> {
      if (N < tail0) return cand[heads[N]];
      Lasso<PointId> w = last;
      for (std::size_t j = tail0; j < N; ++j) w = shift_apply(w);
      return w;
    };
    // Head letter the shadower should track at step N.
    auto target = [&](std::size_t N) -> PointId {
      if (N < tail0) return cand[heads[N]].at(0);
      return last.at(N - tail0);
    };

    // Greedy trajectory: follow the target head whenever the step is
    // allowed, otherwise repair via the least legal successor. The state
    // (current point, tail phase) repeats, closing the trajectory.
    std::size_t settle = tail0 + last.prefix.size();
    std::size_t cyc = last.cycle.size();
    std::vector<PointId> zs{target(0)};
    std::map<std::pair<PointId, std::size_t>, std::size_t> seen;
    std::size_t s1 = 0, s2 = 0;
    for (std::size_t N = 0;; ++N) {
      if (N >= settle) {
        auto key = std::make_pair(zs.back(), (N - settle) % cyc);
        auto it = seen.find(key);
        if (it != seen.end()) {
          s1 = it->second;
          s2 = N;
          break;
        }
        seen.emplace(key, N);
      }
      PointId t = target(N + 1);
      zs.push_back(has_bit(gl.fiber(zs.back()), t)
                       ? t
                       : __builtin_ctzll(gl.fiber(zs.back())));
    }
    Lasso<PointId> z(std::vector<PointId>(zs.begin(), zs.begin() + s1),
                     std::vector<PointId>(zs.begin() + s1, zs.begin() + s2));
    z.canonicalize();

    // Exact check over one joint period: rho(sigma^N z, po(N)) < eps.
    std::size_t pre = std::max(z.prefix.size(), settle);
    std::size_t per = std::lcm(z.cycle.size(), cyc);
    bool ok = true;
    Lasso<PointId> sz = z;
    for (std::size_t N = 0; N < pre + per && ok; ++N) {
      ok = rho(space, sz, po_at(N)) < rep.eps;
      sz = shift_apply(sz);
    }
    if (ok) {
      ++rep.shadowed;
    } else {
      std::string desc;
      for (std::size_t i = 0; i < heads.size(); ++i) {
        if (i) desc += " -> ";
        desc += lasso_str(space, cand[heads[i]]);
      }
      rep.failures.push_back(desc);
    }
  }
  return rep;
}

ClosingReport closing_example_check(int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  ClosingReport rep;
  rep.n = n;
  rep.eps = Rational(1, 4);
  rep.step_bound = Rational(1, n);

  // The system: identity union the jump-to-zero line on [0,1]. Every
  // constant sequence over a domain point is a trajectory.
  IntervalSet domain = IntervalSet::of({Interval::closed(0, 1)});
  PlanarRelation r = PlanarRelation::make(
      domain, {Primitive::diag(Interval::closed(0, 1)),
               Primitive::hline(Interval::closed(0, 1), 0)});

  auto stair = [&](int j) {
    return Lasso<Rational>({}, {Rational(std::min(j, n), n)});
  };

  // Steps of the staircase: exactly 1/n while climbing, then 0.
  bool steps = true;
  for (int j = 0; j <= n; ++j) {
    Rational v = Rational(std::min(j, n), n);
    steps = steps && r.member(v, v);
    Rational step = rho_line(shift_apply(stair(j)), stair(j + 1));
    steps = steps && step == (j < n ? rep.step_bound : Rational(0));
  }
  rep.steps_exact = steps;

  // A shadower tracking the tail must sit at its start value forever or
  // drop to zero; the zero branch already misses the tail by d(1,0)/2.
  rep.branch_refuted = !(Rational(1, 2) < rep.eps);

  // Remaining branch: the start value is within 1/2 of both 0 and 1.
  IntervalSet nearStart = strict_ball(Rational(0), Rational(1, 2), domain);
  IntervalSet nearTail = strict_ball(Rational(1), Rational(1, 2), domain);
  rep.gap_empty = intersect(nearStart, nearTail).is_empty();

  rep.passed = rep.steps_exact && rep.branch_refuted && rep.gap_empty;
  return rep;
}

}  // namespace crshadow
