#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "crshadow/fin_core.hpp"
#include "crshadow/finite_system.hpp"
#include "crshadow/flagged.hpp"

using namespace crshadow;

namespace {

SpacePtr line_space(std::vector<std::string> labels,
                    std::vector<Rational> coords) {
  return std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_line(std::move(labels), std::move(coords)));
}

// three collinear points with full-history successor structure:
// 1 -> {1, 0}, -1 -> {0, -1}, 0 has no successor
FiniteRelation trio() {
  SpacePtr sp = line_space({"-1", "0", "1"},
                           {Rational(-1), Rational(0), Rational(1)});
  return FiniteRelation::make(sp, {{2, 2}, {2, 1}, {0, 1}, {0, 0}});
}

// complete relation on two points at distance 1
FiniteRelation k2() {
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  return FiniteRelation::make(sp, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

FiniteRelation random_relation(std::mt19937_64& rng, int n) {
  std::vector<std::string> labels;
  std::vector<Rational> coords;
  for (int k = 0; k < n; ++k) {
    coords.push_back(Rational(k, n));
    labels.push_back(coords.back().str());
  }
  SpacePtr sp = line_space(labels, coords);
  for (;;) {
    std::vector<Mask> succ(n, 0);
    bool any = false;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rng() % 2) {
          succ[x] |= bit(y);
          any = true;
        }
    if (!any) continue;
    return FiniteRelation::from_masks(sp, succ);
  }
}

}  // namespace

TEST_CASE("metric constructors validate the axioms") {
  CHECK_THROWS(FiniteMetricSpace::from_line({"a", "b"}, {Rational(0)}));
  CHECK_THROWS(FiniteMetricSpace::from_line(
      {"a", "b"}, {Rational(1), Rational(1)}));  // duplicate coordinate
  // asymmetric matrix
  CHECK_THROWS(FiniteMetricSpace::from_matrix(
      {"a", "b"}, {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}}));
  // nonzero diagonal
  CHECK_THROWS(FiniteMetricSpace::from_matrix(
      {"a", "b"}, {{Rational(1), Rational(1)}, {Rational(1), Rational(0)}}));
  // zero off the diagonal
  CHECK_THROWS(FiniteMetricSpace::from_matrix(
      {"a", "b"}, {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}));
  // negative distance
  CHECK_THROWS(FiniteMetricSpace::from_matrix(
      {"a", "b"}, {{Rational(0), Rational(-1)}, {Rational(-1), Rational(0)}}));
  // triangle violation: d(a,c) = 5 > 1 + 1
  CHECK_THROWS(FiniteMetricSpace::from_matrix(
      {"a", "b", "c"},
      {{Rational(0), Rational(1), Rational(5)},
       {Rational(1), Rational(0), Rational(1)},
       {Rational(5), Rational(1), Rational(0)}}));
  // a valid matrix is accepted
  FiniteMetricSpace ok = FiniteMetricSpace::from_matrix(
      {"a", "b"}, {{Rational(0), Rational(2)}, {Rational(2), Rational(0)}});
  CHECK(ok.d(0, 1) == Rational(2));
}

TEST_CASE("index_of resolves labels and throws on unknown ones") {
  FiniteRelation g = trio();
  CHECK(g.X().index_of("-1") == 0);
  CHECK(g.X().index_of("1") == 2);
  CHECK_THROWS(g.X().index_of("7"));
}

TEST_CASE("relations must be non-empty") {
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  CHECK_THROWS(FiniteRelation::make(sp, {}));
}

TEST_CASE("nondegenerate and legal sets on the collinear trio") {
  FiniteRelation g = trio();
  // 0 has no successor, so ND = {-1, 1}
  CHECK(nondegenerate_set(g) == (bit(0) | bit(2)));
  // 0 is a sink, so chains through 0 die; only the self-loops survive
  CHECK(legal_set(g) == (bit(0) | bit(2)));
  FiniteRelation r = restrict_to_legal(g);
  CHECK(r.has(0, 0));
  CHECK(r.has(2, 2));
  CHECK_FALSE(r.has(2, 1));
  CHECK_FALSE(r.has(0, 1));
}

TEST_CASE("a chain with a dead end has empty legal set") {
  SpacePtr sp = line_space({"0", "1", "2"},
                           {Rational(0), Rational(1), Rational(2)});
  FiniteRelation g = FiniteRelation::make(sp, {{0, 1}, {1, 2}});
  CHECK(nondegenerate_set(g) == (bit(0) | bit(1)));
  CHECK(legal_set(g) == 0);
  CHECK_THROWS_AS(restrict_to_legal(g), FlaggedSystem);
}

TEST_CASE("complete relation is fully legal") {
  FiniteRelation g = k2();
  CHECK(nondegenerate_set(g) == 3);
  CHECK(legal_set(g) == 3);
}

TEST_CASE("relation_power matches boolean matrix multiplication") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + (int)(rng() % 4);
    FiniteRelation g = random_relation(rng, n);
    // oracle: boolean matrix power
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) m[x][y] = g.has(x, y);
    std::vector<std::vector<bool>> acc = m;
    for (int k = 1; k <= 4; ++k) {
      if (k > 1) {
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (int x = 0; x < n; ++x)
          for (int z = 0; z < n; ++z)
            if (acc[x][z])
              for (int y = 0; y < n; ++y)
                if (m[z][y]) next[x][y] = true;
        acc = next;
      }
      bool empty = true;
      for (int x = 0; x < n && empty; ++x)
        for (int y = 0; y < n && empty; ++y)
          if (acc[x][y]) empty = false;
      if (empty) {
        CHECK_THROWS_AS(relation_power(g, k), FlaggedSystem);
        break;
      }
      FiniteRelation gk = relation_power(g, k);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) CHECK(gk.has(x, y) == acc[x][y]);
    }
  }
}

TEST_CASE("inverse flips pairs and is an involution") {
  FiniteRelation g = trio();
  FiniteRelation gi = inverse(g);
  CHECK(gi.has(1, 2));
  CHECK(gi.has(1, 0));
  CHECK(gi.has(2, 2));
  CHECK(gi.has(0, 0));
  CHECK_FALSE(gi.has(2, 1));
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    FiniteRelation h = random_relation(rng, 2 + (int)(rng() % 4));
    FiniteRelation hii = inverse(inverse(h));
    for (int x = 0; x < h.size(); ++x) CHECK(hii.fiber(x) == h.fiber(x));
  }
}

TEST_CASE("mahavier_product lists exactly the words walked along the relation") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 25; ++t) {
    int n = 2 + (int)(rng() % 3);
    FiniteRelation g = random_relation(rng, n);
    for (int m = 0; m <= 4; ++m) {
      // oracle: breadth-first extension of all words
      std::vector<std::vector<PointId>> want;
      for (int x = 0; x < n; ++x) want.push_back({x});
      for (int step = 0; step < m; ++step) {
        std::vector<std::vector<PointId>> next;
        for (const auto& w : want)
          for (int y = 0; y < n; ++y)
            if (g.has(w.back(), y)) {
              next.push_back(w);
              next.back().push_back(y);
            }
        want = next;
      }
      std::vector<std::vector<PointId>> got = mahavier_product(g, m);
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("trajectory_lassos returns canonical walks in the legal part") {
  FiniteRelation g = k2();
  std::vector<Lasso<PointId>> ws = trajectory_lassos(g, 0, 4);
  CHECK(!ws.empty());
  std::set<std::vector<PointId>> seen;
  for (const Lasso<PointId>& w : ws) {
    CHECK(w.at(0) == 0);
    // every consecutive pair must lie in the relation
    for (std::size_t k = 0; k + 1 < 2 * w.size() + 2; ++k)
      CHECK(g.has(w.at(k), w.at(k + 1)));
    // canonical: re-canonicalizing changes nothing
    Lasso<PointId> c = w.canonical();
    CHECK(c.prefix == w.prefix);
    CHECK(c.cycle == w.cycle);
    // no duplicates up to denotation
    CHECK(seen.insert(w.unroll(12)).second);
  }
  // deterministic: a second call gives the identical list
  std::vector<Lasso<PointId>> ws2 = trajectory_lassos(g, 0, 4);
  REQUIRE(ws2.size() == ws.size());
  for (std::size_t k = 0; k < ws.size(); ++k) {
    CHECK(ws[k].prefix == ws2[k].prefix);
    CHECK(ws[k].cycle == ws2[k].cycle);
  }
  // the single-point loop system has exactly one trajectory
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  FiniteRelation loop = FiniteRelation::make(sp, {{0, 0}, {1, 0}});
  std::vector<Lasso<PointId>> single = trajectory_lassos(loop, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].at(0) == 1);
  CHECK(single[0].at(1) == 0);
  CHECK(single[0].at(2) == 0);
}

TEST_CASE("unique_trajectories holds for permutations and fails for branching") {
  SpacePtr sp = line_space({"0", "1", "2"},
                           {Rational(0), Rational(1), Rational(2)});
  FiniteRelation perm = FiniteRelation::make(sp, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(unique_trajectories(perm));
  CHECK_FALSE(unique_trajectories(k2()));
  // branching outside the legal part does not matter: the trio branches at
  // 1 and -1, but its legal restriction is two self-loops
  CHECK(unique_trajectories(trio()));
}

TEST_CASE("f_k_relation splits a relation whose square is the identity") {
  // swap graph: 0 <-> 1, G^2 = diagonal
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  FiniteRelation g = FiniteRelation::make(sp, {{0, 1}, {1, 0}});
  FiniteRelation g2 = relation_power(g, 2);
  CHECK(g2.has(0, 0));
  CHECK(g2.has(1, 1));
  CHECK_FALSE(g2.has(0, 1));
  // F_1 for n = 2: y in G(x) and x in G(y); here that is g itself
  FiniteRelation f1 = f_k_relation(g, 2, 1);
  for (int x = 0; x < 2; ++x) CHECK(f1.fiber(x) == g.fiber(x));
  // F_0 is the diagonal intersected with G^0 = diagonal
  FiniteRelation f0 = f_k_relation(g, 2, 0);
  CHECK(f0.has(0, 0));
  CHECK(f0.has(1, 1));
  CHECK_FALSE(f0.has(0, 1));
  // the hypothesis (diagonal inside G^n) is checked
  FiniteRelation bad = FiniteRelation::make(sp, {{0, 1}, {1, 1}});
  CHECK_THROWS(f_k_relation(bad, 2, 1));
}

TEST_CASE("conjugate transports the relation along a bijection") {
  FiniteRelation g = k2();
  // reflect the two points; the target space is the same line
  SpacePtr target = line_space({"0", "1"}, {Rational(0), Rational(1)});
  ConjugateResult res = conjugate(g, {1, 0}, target);
  CHECK(res.isometric);
  // K2 is symmetric under the swap
  for (int x = 0; x < 2; ++x) CHECK(res.image.fiber(x) == g.fiber(x));

  // an asymmetric relation moves: 0 -> {0,1}, 1 -> {1} becomes
  // 1 -> {1,0}, 0 -> {0} after the swap
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  FiniteRelation h = FiniteRelation::make(sp, {{0, 0}, {0, 1}, {1, 1}});
  ConjugateResult hr = conjugate(h, {1, 0}, target);
  CHECK(hr.image.has(1, 1));
  CHECK(hr.image.has(1, 0));
  CHECK(hr.image.has(0, 0));
  CHECK_FALSE(hr.image.has(0, 1));

  // a distance-bending bijection is reported as non-isometric
  SpacePtr stretched = line_space({"0", "2"}, {Rational(0), Rational(2)});
  ConjugateResult sr = conjugate(g, {0, 1}, stretched);
  CHECK_FALSE(sr.isometric);
}
