#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "crshadow/lasso.hpp"

using crshadow::Lasso;
using crshadow::shift_apply;

using L = Lasso<int>;

TEST_CASE("empty cycle is rejected") {
  CHECK_THROWS_AS(L({1, 2}, {}), std::invalid_argument);
}

TEST_CASE("at walks the prefix then loops the cycle forever") {
  L w({7, 8}, {1, 2, 3});
  std::vector<int> want = {7, 8, 1, 2, 3, 1, 2, 3, 1, 2};
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(w.at(k) == want[k]);
  CHECK(w.size() == 5);
  CHECK(w.unroll(10) == want);
  CHECK(w.unroll(0).empty());
}

TEST_CASE("pure cycle lasso starts in the cycle immediately") {
  L w({}, {4, 5});
  CHECK(w.at(0) == 4);
  CHECK(w.at(1) == 5);
  CHECK(w.at(2) == 4);
  CHECK(w.unroll(5) == std::vector<int>{4, 5, 4, 5, 4});
}

TEST_CASE("canonicalize reduces a repeated cycle to its primitive period") {
  L w({}, {1, 2, 1, 2, 1, 2});
  w.canonicalize();
  CHECK(w.cycle == std::vector<int>{1, 2});
  CHECK(w.prefix.empty());

  L c({}, {3, 3, 3});
  c.canonicalize();
  CHECK(c.cycle == std::vector<int>{3});
}

TEST_CASE("canonicalize absorbs a prefix tail that duplicates the cycle") {
  // (1, 2 | 1, 2) denotes the same sequence as ( | 1, 2)
  L w({1, 2}, {1, 2});
  w.canonicalize();
  CHECK(w.prefix.empty());
  CHECK(w.cycle == std::vector<int>{1, 2});

  // (5, 2 | 1, 2) absorbs only the trailing 2, rotating the cycle
  L v({5, 2}, {1, 2});
  v.canonicalize();
  CHECK(v.prefix == std::vector<int>{5});
  CHECK(v.cycle == std::vector<int>{2, 1});
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 300; ++t) {
    std::vector<int> p, c;
    std::size_t pl = rng() % 5, cl = 1 + rng() % 4;
    for (std::size_t k = 0; k < pl; ++k) p.push_back((int)(rng() % 3));
    for (std::size_t k = 0; k < cl; ++k) c.push_back((int)(rng() % 3));
    L w(p, c);
    L once = w.canonical();
    L twice = once.canonical();
    CHECK(once.prefix == twice.prefix);
    CHECK(once.cycle == twice.cycle);
  }
}

TEST_CASE("canonicalization preserves the denoted sequence") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 300; ++t) {
    std::vector<int> p, c;
    std::size_t pl = rng() % 6, cl = 1 + rng() % 6;
    for (std::size_t k = 0; k < pl; ++k) p.push_back((int)(rng() % 2));
    for (std::size_t k = 0; k < cl; ++k) c.push_back((int)(rng() % 2));
    L w(p, c);
    L canon = w.canonical();
    std::size_t n = 2 * w.size() + 5;
    CHECK(w.unroll(n) == canon.unroll(n));
    CHECK(canon.size() <= w.size());
  }
}

TEST_CASE("equality compares denoted sequences, not representations") {
  CHECK(L({1}, {2, 2}) == L({1}, {2}));
  CHECK(L({}, {1, 2, 1, 2}) == L({}, {1, 2}));
  CHECK(L({1, 2}, {1, 2}) == L({}, {1, 2}));
  CHECK(L({}, {1, 2}) != L({}, {2, 1}));
  CHECK(L({0}, {1}) != L({}, {1}));
}

TEST_CASE("shift_apply drops the head and keeps the result canonical") {
  // prefix case: just drop the first prefix element
  L w({7, 8}, {1, 2});
  L s = shift_apply(w);
  CHECK(s.prefix == std::vector<int>{8});
  CHECK(s.cycle == std::vector<int>{1, 2});

  // cycle case: rotate
  L c({}, {1, 2, 3});
  L sc = shift_apply(c);
  CHECK(sc.prefix.empty());
  CHECK(sc.cycle == std::vector<int>{2, 3, 1});

  // rotation that creates a repeated cycle collapses to the primitive one
  L r({}, {1, 1, 2, 1});
  r.canonicalize();  // already primitive as given? (1,1,2,1) has period 4
  L sr = shift_apply(r);
  // sequence was 1,1,2,1,1,1,2,1,... -> tail is 1,2,1,1,1,2,1,1,...
  std::size_t n = 12;
  for (std::size_t k = 0; k < n; ++k) CHECK(sr.at(k) == r.at(k + 1));
}

TEST_CASE("shift_apply denotes the tail on random lassos") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::vector<int> p, c;
    std::size_t pl = rng() % 4, cl = 1 + rng() % 5;
    for (std::size_t k = 0; k < pl; ++k) p.push_back((int)(rng() % 3));
    for (std::size_t k = 0; k < cl; ++k) c.push_back((int)(rng() % 3));
    L w(p, c);
    L s = shift_apply(w);
    for (std::size_t k = 0; k < 2 * w.size() + 4; ++k)
      CHECK(s.at(k) == w.at(k + 1));
  }
}
