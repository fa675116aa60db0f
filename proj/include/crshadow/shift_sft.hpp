#pragma once
// Sequence-space machinery: the edge shift over a finite legal set, its
// forbidden-word description, exact rho-metric arithmetic on eventually
// periodic sequences, a bounded shift-shadowing demonstration, and the
// staircase construction showing the shift over the diagonal-plus-line
// system has no shadowing.

#include <string>
#include <utility>
#include <vector>

#include "crshadow/fin_core.hpp"
#include "crshadow/finite_system.hpp"
#include "crshadow/lasso.hpp"

namespace crshadow {

struct EdgeShift {
  Mask alphabet;               // legal(G)
  std::vector<Mask> allowed;   // G restricted to legal x legal
};

EdgeShift edge_shift(const FiniteRelation& g);

struct ForbiddenWordSet {
  Mask alphabet;
  std::vector<std::pair<PointId, PointId>> words;  // length-2, sorted

  bool forbids(PointId x, PointId y) const;
};

// words = { xy : x,y legal, (x,y) not in G }. Throws FlaggedSystem when the
// legal set is empty.
ForbiddenWordSet forbidden_words(const FiniteRelation& g);

// True iff no consecutive pair of the denoted sequence (prefix, cycle and
// the wrap) is forbidden. Letters outside the alphabet are an error.
bool sft_member(const Lasso<PointId>& w, const ForbiddenWordSet& f);

// rho(a, b) = sum over k of d(a_k, b_k) / 2^(k+1), evaluated exactly: the
// distance sequence is eventually periodic, so the value is a finite sum
// plus a geometric closed form. The minimal preperiod/period of the
// distance sequence is used; if preperiod + period exceeds the exact int64
// range (55), FlaggedSystem is thrown rather than rounding.
Rational rho(const FiniteMetricSpace& space, const Lasso<PointId>& a,
             const Lasso<PointId>& b);

// Same series with d(x, y) = |x - y| on rational entries.
Rational rho_line(const Lasso<Rational>& a, const Lasso<Rational>& b);

// All canonical lassos with prefix+cycle length <= maxLen whose steps all
// lie in G restricted to legal x legal, sorted.
std::vector<Lasso<PointId>> allowed_lassos(const FiniteRelation& g,
                                           int maxLen);

struct ShiftDemoReport {
  int k = 0, m = 0;
  Rational eps, delta;
  int candidates = 0;      // lassos enumerated as sequence-space points
  int pseudo_orbits = 0;   // delta-pseudo-orbits assembled from them
  int shadowed = 0;
  std::vector<std::string> failures;  // unshadowed pseudo-orbit heads

  bool all_shadowed() const { return shadowed == pseudo_orbits; }
};

// Bounded certification of shift shadowing for finite legal sets, at
// eps = 2^-k and delta = 2^-(k+2). Pseudo-orbits are walks of at most two
// rho-delta jumps among the enumerated lassos, continued by the exact
// shift orbit of the last element. Shadowers are built by greedy head
// matching with least-successor repair and verified exactly over the
// joint period. A demonstration at bounded precision, not a proof.
ShiftDemoReport shift_shadowing_demo(const FiniteRelation& g, int k, int m);

struct ClosingReport {
  int n = 0;
  Rational eps;           // 1/4
  Rational step_bound;    // 1/n
  bool steps_exact = false;     // each rho(shift(x_k), x_{k+1}) <= 1/n
  bool branch_refuted = false;  // the y_n = 0 branch: d(1,0)/2 >= 1/4
  bool gap_empty = false;       // [0,1/2) cap (1/2,1] = empty
  bool passed = false;
};

// The staircase of constant sequences over the diagonal-plus-line system:
// a delta-pseudo-orbit of the shift for every delta >= 1/n that no point
// of the sequence space 1/4-shadows. All three checks are exact.
ClosingReport closing_example_check(int n);

}  // namespace crshadow
