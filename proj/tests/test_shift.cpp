#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "crshadow/fin_core.hpp"
#include "crshadow/finite_system.hpp"
#include "crshadow/flagged.hpp"
#include "crshadow/random_system.hpp"
#include "crshadow/shift_sft.hpp"

using namespace crshadow;

namespace {

SpacePtr line_space(std::vector<std::string> labels,
                    std::vector<Rational> coords) {
  return std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_line(std::move(labels), std::move(coords)));
}

FiniteRelation trio() {
  SpacePtr sp = line_space({"-1", "0", "1"},
                           {Rational(-1), Rational(0), Rational(1)});
  return FiniteRelation::make(sp, {{2, 2}, {2, 1}, {0, 1}, {0, 0}});
}

FiniteRelation k2() {
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  return FiniteRelation::make(sp, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

}  // namespace

TEST_CASE("edge shift alphabet is the legal set") {
  FiniteRelation g = trio();
  EdgeShift es = edge_shift(g);
  CHECK(es.alphabet == legal_set(g));
  // allowed transitions are the legal restriction
  FiniteRelation r = restrict_to_legal(g);
  for (int x = 0; x < g.size(); ++x)
    if (has_bit(es.alphabet, x)) CHECK(es.allowed[x] == r.fiber(x));
}

TEST_CASE("forbidden words list exactly the missing legal pairs") {
  // trio: legal = {-1, 1}, and the cross pairs are absent from G
  FiniteRelation g = trio();
  ForbiddenWordSet f = forbidden_words(g);
  CHECK(f.alphabet == (bit(0) | bit(2)));
  REQUIRE(f.words.size() == 2);
  CHECK(f.forbids(0, 2));
  CHECK(f.forbids(2, 0));
  CHECK_FALSE(f.forbids(0, 0));
  CHECK_FALSE(f.forbids(2, 2));
  CHECK(g.X().labels[f.words[0].first] == "-1");
  CHECK(g.X().labels[f.words[0].second] == "1");
  CHECK(g.X().labels[f.words[1].first] == "1");
  CHECK(g.X().labels[f.words[1].second] == "-1");

  // the complete relation forbids nothing
  CHECK(forbidden_words(k2()).words.empty());

  // the swap relation forbids staying put
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  FiniteRelation swap = FiniteRelation::make(sp, {{0, 1}, {1, 0}});
  ForbiddenWordSet fs = forbidden_words(swap);
  REQUIRE(fs.words.size() == 2);
  CHECK(fs.forbids(0, 0));
  CHECK(fs.forbids(1, 1));

  // empty legal set is flagged
  FiniteRelation dead = FiniteRelation::make(sp, {{0, 1}});
  CHECK_THROWS_AS(forbidden_words(dead), FlaggedSystem);
}

TEST_CASE("sft membership agrees with walking the relation") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    FiniteRelation g = random_system(rng, 4);
    FiniteRelation r = restrict_to_legal(g);
    ForbiddenWordSet f = forbidden_words(g);
    Mask legal = legal_set(g);
    // sample random lassos over the legal alphabet and compare predicates
    std::vector<PointId> letters;
    for_bits(legal, [&](PointId x) { letters.push_back(x); });
    for (int s = 0; s < 30; ++s) {
      std::vector<PointId> p, c;
      std::size_t pl = rng() % 3, cl = 1 + rng() % 3;
      for (std::size_t q = 0; q < pl; ++q)
        p.push_back(letters[rng() % letters.size()]);
      for (std::size_t q = 0; q < cl; ++q)
        c.push_back(letters[rng() % letters.size()]);
      Lasso<PointId> w(p, c);
      bool direct = true;
      for (std::size_t q = 0; q + 1 < w.size() + 1 && direct; ++q)
        direct = r.has(w.at(q), w.at(q + 1));
      CHECK(sft_member(w, f) == direct);
    }
  }
}

TEST_CASE("rho values on hand sequences") {
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  FiniteMetricSpace space = *sp;
  Lasso<PointId> zero({}, {0});
  Lasso<PointId> one({}, {1});
  // constant distance 1: sum 1/2^(k+1) = 1
  CHECK(rho(space, zero, one) == Rational(1));
  CHECK(rho(space, zero, zero) == Rational(0));
  // differ only at position 0: 1/2
  Lasso<PointId> head({0}, {1});
  CHECK(rho(space, head, one) == Rational(1, 2));
  // alternating vs constant zero: distances 0,1,0,1,... = sum 1/2^(2k+2) = 1/3
  Lasso<PointId> alt({}, {0, 1});
  CHECK(rho(space, alt, zero) == Rational(1, 3));
}

TEST_CASE("rho is a metric and the shift is 2-Lipschitz under it") {
  std::mt19937_64 rng(42);
  SpacePtr sp = line_space({"0", "1/3", "1"},
                           {Rational(0), Rational(1, 3), Rational(1)});
  FiniteMetricSpace space = *sp;
  auto rand_lasso = [&]() {
    std::vector<PointId> p, c;
    std::size_t pl = rng() % 3, cl = 1 + rng() % 3;
    for (std::size_t q = 0; q < pl; ++q) p.push_back((PointId)(rng() % 3));
    for (std::size_t q = 0; q < cl; ++q) c.push_back((PointId)(rng() % 3));
    return Lasso<PointId>(p, c);
  };
  for (int t = 0; t < 120; ++t) {
    Lasso<PointId> a = rand_lasso(), b = rand_lasso(), c = rand_lasso();
    Rational ab = rho(space, a, b);
    // symmetry and identity of indiscernibles
    CHECK(ab == rho(space, b, a));
    CHECK((ab == Rational(0)) == (a == b));
    // triangle inequality
    CHECK(ab <= rho(space, a, c) + rho(space, c, b));
    // dropping the heads at most doubles the distance
    CHECK(rho(space, shift_apply(a), shift_apply(b)) <= Rational(2) * ab);
  }
}

TEST_CASE("rho_line matches the finite-space rho on embedded sequences") {
  Lasso<Rational> a({}, {Rational(0)});
  Lasso<Rational> b({Rational(0)}, {Rational(1)});
  CHECK(rho_line(a, b) == Rational(1, 2));
  CHECK(rho_line(a, a) == Rational(0));
  // staircase neighbours over {k/n}: constant j/n vs constant (j+1)/n
  for (int n : {2, 4, 8}) {
    for (int j = 0; j + 1 <= n; ++j) {
      Lasso<Rational> x({}, {Rational(j, n)});
      Lasso<Rational> y({}, {Rational(j + 1, n)});
      CHECK(rho_line(x, y) == Rational(1, n));
    }
  }
}

TEST_CASE("rho refuses periods past the exact range instead of rounding") {
  // cycle of 59 zeros and a single one against constant zero: the distance
  // sequence has period 60, past the 55-bit exact budget
  std::vector<PointId> longcycle(59, 0);
  longcycle.push_back(1);
  Lasso<PointId> spike({}, longcycle);
  Lasso<PointId> zero({}, {0});
  SpacePtr sp = line_space({"0", "1"}, {Rational(0), Rational(1)});
  CHECK_THROWS_AS(rho(*sp, spike, zero), FlaggedSystem);
}

TEST_CASE("allowed lassos enumerate the bounded sequence catalogue") {
  FiniteRelation g = k2();
  std::vector<Lasso<PointId>> all3 = allowed_lassos(g, 3);
  // frozen counts: canonical lassos over two free letters, by length bound
  CHECK(allowed_lassos(g, 1).size() == 2);
  CHECK(allowed_lassos(g, 2).size() == 6);
  CHECK(all3.size() == 18);
  CHECK(allowed_lassos(g, 4).size() == 48);
  for (const Lasso<PointId>& w : all3) {
    CHECK((int)w.size() <= 3);
    for (std::size_t q = 0; q < w.size() + 1; ++q)
      CHECK(g.has(w.at(q), w.at(q + 1)));
    Lasso<PointId> c = w.canonical();
    CHECK(c.prefix == w.prefix);
    CHECK(c.cycle == w.cycle);
  }
  // determinism
  std::vector<Lasso<PointId>> again = allowed_lassos(g, 3);
  REQUIRE(again.size() == all3.size());
  for (std::size_t q = 0; q < all3.size(); ++q) {
    CHECK(again[q].prefix == all3[q].prefix);
    CHECK(again[q].cycle == all3[q].cycle);
  }
}

TEST_CASE("bounded shift-shadowing demonstration on the full two-shift") {
  ShiftDemoReport rep = shift_shadowing_demo(k2(), 3, 6);
  CHECK(rep.k == 3);
  CHECK(rep.m == 6);
  CHECK(rep.eps == Rational(1, 8));
  CHECK(rep.delta == Rational(1, 32));
  // frozen catalogue sizes for this parameterization
  CHECK(rep.candidates == 306);
  CHECK(rep.pseudo_orbits == 34006);
  CHECK(rep.all_shadowed());
  CHECK(rep.failures.empty());
}

TEST_CASE("staircase refutation of shift shadowing holds at every scale") {
  for (int n : {2, 4, 8}) {
    ClosingReport rep = closing_example_check(n);
    CHECK(rep.n == n);
    CHECK(rep.eps == Rational(1, 4));
    CHECK(rep.step_bound == Rational(1, n));
    CHECK(rep.steps_exact);
    CHECK(rep.branch_refuted);
    CHECK(rep.gap_empty);
    CHECK(rep.passed);
  }
}
