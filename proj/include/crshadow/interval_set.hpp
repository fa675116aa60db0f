#pragma once
// Finite unions of rational-endpoint intervals in the line, with exact
// open/closed endpoint tracking. Isolated points are degenerate closed
// intervals. Everything is canonical: sorted, disjoint, no mergeable pair.

#include <optional>
#include <string>
#include <vector>

#include "crshadow/rational.hpp"

namespace crshadow {

struct Interval {
  Rational lo, hi;
  bool locl = true, hicl = true;  // endpoint closed flags

  static Interval point(Rational c) { return {c, c, true, true}; }
  static Interval closed(Rational a, Rational b) { return {a, b, true, true}; }
  static Interval open(Rational a, Rational b) { return {a, b, false, false}; }

  // Nonempty iff lo < hi, or lo == hi with both ends closed.
  bool nonempty() const;
  bool contains(const Rational& x) const;
  std::string str() const;

  bool operator==(const Interval& o) const = default;
};

struct IntervalSet {
  std::vector<Interval> comps;  // canonical form

  static IntervalSet empty() { return {}; }
  static IntervalSet of(std::vector<Interval> raw);  // normalizes
  static IntervalSet point(Rational c) { return of({Interval::point(c)}); }

  bool is_empty() const { return comps.empty(); }
  bool contains(const Rational& x) const;
  std::string str() const;

  bool operator==(const IntervalSet& o) const = default;
};

IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet subtract(const IntervalSet& a, const IntervalSet& b);
bool subset(const IntervalSet& a, const IntervalSet& b);

// Image {a*x+b : x in s}; a may be zero or negative.
IntervalSet affine_image(const IntervalSet& s, const Rational& a,
                         const Rational& b);

// Open ball (c-eps, c+eps) clipped to the domain; and its closed variant.
IntervalSet strict_ball(const Rational& c, const Rational& eps,
                        const IntervalSet& domain);
IntervalSet closed_ball(const Rational& c, const Rational& eps,
                        const IntervalSet& domain);

// All endpoint values, ascending and deduplicated.
std::vector<Rational> endpoints(const IntervalSet& s);

// A finite stand-in for s: every endpoint plus each component midpoint.
std::vector<Rational> sample_points(const IntervalSet& s);

// inf distance from x to s; nullopt when s is empty. The infimum is attained
// unless x sits next to an open endpoint, in which case it is still the
// correct inf (flags do not change the value).
std::optional<Rational> inf_dist(const IntervalSet& s, const Rational& x);

// sup distance from x to s (always attained at an endpoint value).
std::optional<Rational> sup_dist(const IntervalSet& s, const Rational& x);

}  // namespace crshadow
