#pragma once
// Closed relations on a line domain, represented as finite unions of planar
// primitives. Every primitive is either product-like (a closed rectangle
// xs x ys, possibly degenerate: vertical segments, horizontal segments,
// single points) or graph-like (an affine graph {(x, a*x+b) : x in xs}).
// Both shapes are closed under composition, so relation powers stay exact.

#include <string>
#include <vector>

#include "crshadow/flagged.hpp"
#include "crshadow/interval_set.hpp"
#include "crshadow/rational.hpp"

namespace crshadow {

struct Primitive {
  bool graph = false;
  Interval xs = Interval::point(Rational{0, 1});  // closed
  Interval ys = Interval::point(Rational{0, 1});  // product-like only
  Rational a, b;                                  // graph-like: y = a*x + b

  static Primitive box(Interval I, Interval J);
  static Primitive vline(Rational c, Interval J);
  static Primitive hline(Interval I, Rational c);
  static Primitive point(Rational x, Rational y);
  static Primitive diag(Interval I);
  static Primitive affine(Interval I, Rational a, Rational b);

  bool contains(const Rational& x, const Rational& y) const;
  // "point", "vline", "hline", "box", "diag", "affine" after classification.
  std::string kind() const;
  std::string str() const;

  bool operator==(const Primitive& o) const;
  bool operator<(const Primitive& o) const;  // total order for canonical lists
};

struct PlanarRelation {
  IntervalSet domain;                // closed, nonempty
  std::vector<Primitive> prims;      // canonical: classified, merged, sorted

  // Validates closedness, nonemptiness, and containment in domain x domain,
  // then canonicalizes. Throws FlaggedSystem on violations.
  static PlanarRelation make(IntervalSet domain, std::vector<Primitive> prims);

  bool member(const Rational& x, const Rational& y) const;
};

// Exact R(S) = {y : exists x in S with (x,y) in R}.
IntervalSet image(const PlanarRelation& r, const IntervalSet& s);

// Exact {x : R(x) meets S}.
IntervalSet preimage_exists(const PlanarRelation& r, const IntervalSet& s);

// {x : R(x) nonempty}; closed since every primitive is closed.
IntervalSet nd_set(const PlanarRelation& r);

// {x in ND(R) : R(x) subset of S}, via ND(R) minus preimage_exists of the
// complement of S.
IntervalSet universal_preimage(const PlanarRelation& r, const IntervalSet& s);

struct LegalResult {
  IntervalSet set;
  bool converged = false;
  int iterations = 0;
};

// Iterates L_0 = ND(R), L_{m+1} = L_m cap preimage_exists(R, L_m) to a
// fixpoint or the cap. On convergence the result is exactly legal(R).
LegalResult legal_iterate(const PlanarRelation& r, int maxIter);

// R restricted to A x A. A must be closed (all component endpoints closed).
PlanarRelation restrict_to(const PlanarRelation& r, const IntervalSet& a);

// Apply h first, then g: {(x,z) : exists y, (x,y) in h and (y,z) in g}.
PlanarRelation compose(const PlanarRelation& g, const PlanarRelation& h);

// R^k under compose; k >= 1.
PlanarRelation planar_power(const PlanarRelation& r, int k);

// Canonical-form equality of the denoted planar sets, as reached by
// classification, same-family merging, and absorption of dominated pieces.
bool same_relation(const PlanarRelation& a, const PlanarRelation& b);

}  // namespace crshadow
