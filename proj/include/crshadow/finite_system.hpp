#pragma once
// Finite metric spaces and closed relations on them. Point sets are bit
// masks, so spaces are capped at 60 points; everything here is desk scale.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crshadow/flagged.hpp"
#include "crshadow/rational.hpp"

namespace crshadow {

using PointId = int;
using Mask = std::uint64_t;

constexpr int kMaxPoints = 60;

inline Mask bit(PointId i) { return Mask(1) << i; }
inline bool has_bit(Mask m, PointId i) { return (m >> i) & 1; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }

// Calls fn(i) for each set bit, ascending.
template <class F>
void for_bits(Mask m, F fn) {
  while (m) {
    PointId i = __builtin_ctzll(m);
    fn(i);
    m &= m - 1;
  }
}

struct FiniteMetricSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> dist;  // symmetric, zero diagonal

  int size() const { return (int)labels.size(); }
  const Rational& d(PointId a, PointId b) const { return dist[a][b]; }
  int index_of(const std::string& label) const;

  // Both constructors validate the metric axioms eagerly and throw on any
  // violation (asymmetry, nonzero diagonal, zero off-diagonal, negative
  // entries, triangle inequality).
  static FiniteMetricSpace from_matrix(std::vector<std::string> labels,
                                       std::vector<std::vector<Rational>> dist);
  static FiniteMetricSpace from_line(std::vector<std::string> labels,
                                     std::vector<Rational> coords);
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

struct FiniteRelation {
  SpacePtr space;
  std::vector<Mask> succ;  // succ[x] = fibers G(x) as masks

  int size() const { return (int)succ.size(); }
  bool has(PointId x, PointId y) const { return has_bit(succ[x], y); }
  Mask fiber(PointId x) const { return succ[x]; }
  std::vector<std::pair<PointId, PointId>> pairs() const;
  const FiniteMetricSpace& X() const { return *space; }

  // Relations are non-empty by definition; construction enforces it.
  static FiniteRelation make(SpacePtr space,
                             const std::vector<std::pair<PointId, PointId>>& pairs);
  static FiniteRelation from_masks(SpacePtr space, std::vector<Mask> succ);
};

}  // namespace crshadow
