#include "crshadow/fin_core.hpp"

#include <algorithm>

namespace crshadow {

Mask nondegenerate_set(const FiniteRelation& g) {
  Mask nd = 0;
  for (PointId x = 0; x < g.size(); ++x)
    if (g.succ[x]) nd |= bit(x);
  return nd;
}

Mask legal_set(const FiniteRelation& g) {
  Mask l = nondegenerate_set(g);
  for (;;) {
    Mask next = 0;
    for_bits(l, [&](PointId x) {
      if (g.succ[x] & l) next |= bit(x);
    });
    if (next == l) return l;
    l = next;
  }
}

FiniteRelation restrict_to_legal(const FiniteRelation& g) {
  Mask l = legal_set(g);
  if (!l) throw FlaggedSystem("legal set is empty");
  std::vector<Mask> succ(g.size(), 0);
  for_bits(l, [&](PointId x) { succ[x] = g.succ[x] & l; });
  return FiniteRelation::from_masks(g.space, std::move(succ));
}

FiniteRelation relation_power(const FiniteRelation& g, int k) {
  if (k < 1) throw std::invalid_argument("relation power needs k >= 1");
  std::vector<Mask> acc = g.succ;
  for (int step = 1; step < k; ++step) {
    std::vector<Mask> next(g.size(), 0);
    for (PointId x = 0; x < g.size(); ++x)
      for_bits(acc[x], [&](PointId y) { next[x] |= g.succ[y]; });
    acc = std::move(next);
  }
  return FiniteRelation::from_masks(g.space, std::move(acc));
}

FiniteRelation inverse(const FiniteRelation& g) {
  std::vector<Mask> succ(g.size(), 0);
  for (PointId x = 0; x < g.size(); ++x)
    for_bits(g.succ[x], [&](PointId y) { succ[y] |= bit(x); });
  return FiniteRelation::from_masks(g.space, std::move(succ));
}

std::vector<std::vector<PointId>> mahavier_product(const FiniteRelation& g,
                                                   int m) {
  if (m < 0) throw std::invalid_argument("mahavier product needs m >= 0");
  std::vector<std::vector<PointId>> words;
  for (PointId x = 0; x < g.size(); ++x) words.push_back({x});
  for (int step = 0; step < m; ++step) {
    std::vector<std::vector<PointId>> next;
    for (const auto& w : words)
      for_bits(g.succ[w.back()], [&](PointId y) {
        next.push_back(w);
        next.back().push_back(y);
      });
    words = std::move(next);
  }
  return words;
}

std::vector<Lasso<PointId>> trajectory_lassos(const FiniteRelation& g,
                                              PointId x, int maxLen) {
  if (maxLen < 0) maxLen = g.size() * (g.size() + 1);
  Mask legal = legal_set(g);
  std::vector<Lasso<PointId>> out;
  if (!has_bit(legal, x)) return out;
  // DFS over legal walks from x; each loop-back edge closes a lasso.
  std::vector<PointId> walk = {x};
  auto emit = [&](std::size_t cycle_start) {
    std::vector<PointId> p(walk.begin(), walk.begin() + cycle_start);
    std::vector<PointId> c(walk.begin() + cycle_start, walk.end());
    Lasso<PointId> l(std::move(p), std::move(c));
    l.canonicalize();
    if (std::find(out.begin(), out.end(), l) == out.end())
      out.push_back(std::move(l));
  };
  std::function<void()> dfs = [&]() {
    PointId last = walk.back();
    for (std::size_t s = 0; s < walk.size(); ++s)
      if (g.has(last, walk[s]) && has_bit(legal, walk[s])) emit(s);
    if ((int)walk.size() >= maxLen) return;
    for_bits(g.succ[last] & legal, [&](PointId y) {
      walk.push_back(y);
      dfs();
      walk.pop_back();
    });
  };
  dfs();
  std::sort(out.begin(), out.end());
  return out;
}

bool unique_trajectories(const FiniteRelation& g) {
  Mask legal = legal_set(g);
  if (!legal) throw FlaggedSystem("legal set is empty");
  bool unique = true;
  for_bits(legal, [&](PointId x) {
    if (popcount(g.succ[x] & legal) != 1) unique = false;
  });
  return unique;
}

FiniteRelation f_k_relation(const FiniteRelation& g, int n, int k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("f_k decomposition needs 0 <= k <= n, n >= 1");
  FiniteRelation gn = relation_power(g, n);
  for (PointId x = 0; x < g.size(); ++x)
    if (!gn.has(x, x))
      throw std::invalid_argument("diagonal not contained in G^n");
  std::vector<Mask> fwd =
      k == 0 ? std::vector<Mask>() : relation_power(g, k).succ;
  std::vector<Mask> back =
      k == n ? std::vector<Mask>() : relation_power(g, n - k).succ;
  std::vector<Mask> succ(g.size(), 0);
  for (PointId x = 0; x < g.size(); ++x)
    for (PointId y = 0; y < g.size(); ++y) {
      bool in_fwd = k == 0 ? x == y : has_bit(fwd[x], y);
      bool in_back = k == n ? y == x : has_bit(back[y], x);
      if (in_fwd && in_back) succ[x] |= bit(y);
    }
  return FiniteRelation::from_masks(g.space, std::move(succ));
}

std::optional<std::vector<PointId>> as_function_graph(const FiniteRelation& g) {
  std::vector<PointId> f(g.size());
  for (PointId x = 0; x < g.size(); ++x) {
    if (popcount(g.succ[x]) != 1) return std::nullopt;
    f[x] = __builtin_ctzll(g.succ[x]);
  }
  return f;
}

ConjugateResult conjugate(const FiniteRelation& g,
                          const std::vector<PointId>& perm, SpacePtr target) {
  if ((int)perm.size() != g.size() || target->size() != g.size())
    throw std::invalid_argument("conjugation needs a bijection between equal-size spaces");
  Mask seen = 0;
  for (PointId p : perm) {
    if (p < 0 || p >= g.size() || has_bit(seen, p))
      throw std::invalid_argument("conjugation map is not a bijection");
    seen |= bit(p);
  }
  bool iso = true;
  for (PointId a = 0; a < g.size(); ++a)
    for (PointId b = 0; b < g.size(); ++b)
      if (g.X().d(a, b) != target->d(perm[a], perm[b])) iso = false;
  std::vector<Mask> succ(g.size(), 0);
  for (PointId x = 0; x < g.size(); ++x)
    for_bits(g.succ[x], [&](PointId y) { succ[perm[x]] |= bit(perm[y]); });
  return {FiniteRelation::from_masks(std::move(target), std::move(succ)), iso};
}

}  // namespace crshadow
