#pragma once
// Tracking filters for planar relations: the forward (existential) frontier
// iteration, the backward universal greatest-fixpoint, and the lowering of
// finite-ND planar systems onto the shared decision core.
//
// Conventions match the finite side: pseudo-orbits compare with <= delta,
// shadowing with < eps.

#include <vector>

#include "crshadow/interval_set.hpp"
#include "crshadow/lasso.hpp"
#include "crshadow/planar_relation.hpp"
#include "crshadow/shadow_core.hpp"

namespace crshadow {

// Every entry must be non-degenerate and every step (cycle wrap included)
// must meet the mode-i tolerance. Fibers are closed, so inf/sup distances
// are attained and the <= delta comparisons are exact.
bool planar_pseudo_orbit(const PlanarRelation& r, const Lasso<Rational>& p,
                         Rational delta, int mode);

enum class ForwardVerdict { noShadower, shadowerExists, inconclusive };

struct ForwardResult {
  ForwardVerdict verdict = ForwardVerdict::inconclusive;
  int fail_step = -1;               // first empty frontier (noShadower)
  std::vector<IntervalSet> trace;   // strict frontiers as computed
};

// Frontier iteration T_{k+1} = image(R, T_k) cap ball(p_{k+1}) cap legal.
// Empty frontier refutes every existential shadower (sound: strict balls
// only shrink the truth). A nonempty cycle-synchronized repeat counts as a
// shadower certificate only when the same iteration with closed balls of
// radius eps - eta also repeats nonempty: closed frontiers make the partial
// orbit sets compact, so the infinite trajectory exists by finite
// intersection. eta is a quarter of the smallest gap in the relevant value
// set, clamped to eps/2.
ForwardResult forward_filter(const PlanarRelation& r, const Lasso<Rational>& p,
                             Rational eps, int maxCyclePasses = 64);

struct UniversalResult {
  IntervalSet set;
  bool exact = false;
};

// Set of points whose every legal trajectory tracks p strictly inside eps:
// greatest fixpoint over the lasso cycle of
//   V_pos = ball(p_pos) cap legal cap upre(V_next),
// then a backward pass over the prefix. Descending iteration from above, so
// a capped result is a superset of the truth; capped emptiness should be
// read as inconclusive by callers.
UniversalResult universal_filter(const PlanarRelation& r,
                                 const Lasso<Rational>& p, Rational eps,
                                 int maxIter = 64);

// Lowers a planar relation with finite non-degenerate set onto the shared
// decision core: nodes = ND points, candidates = legal points, gaps from
// exact fiber distances. Throws FlaggedSystem when ND or legal is not a
// finite point set or the legality iteration fails to converge.
ShadowingInstance finite_nd_instance(const PlanarRelation& r);

// The node values of finite_nd_instance, ascending (index-aligned).
std::vector<Rational> finite_nd_points(const PlanarRelation& r);

}  // namespace crshadow
