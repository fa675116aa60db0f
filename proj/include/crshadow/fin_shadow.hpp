#pragma once
// Decision procedures for the four shadowing properties on finite systems,
// plus the bounded brute-force falsifier used as an independent oracle and
// the implication/power audits.
//
// Conventions (fixed once, used everywhere): pseudo-orbit conditions compare
// with <= delta, shadowing conditions with < eps. Mode i=1 quantifies over
// all fiber members, i=2 over some member; mode j=1 over all trajectories,
// j=2 over some trajectory.

#include <array>
#include <optional>
#include <vector>

#include "crshadow/fin_core.hpp"
#include "crshadow/finite_system.hpp"
#include "crshadow/lasso.hpp"
#include "crshadow/shadow_core.hpp"

namespace crshadow {

struct ThresholdLadder {
  std::vector<Rational> values;  // ascending distinct positive distances
  Rational subminimal() const { return subminimal_delta(values); }
};

ThresholdLadder threshold_ladder(const FiniteMetricSpace& space);

struct PseudoOrbitGraph {
  Mask nodes;              // ND(G)
  std::vector<Mask> succ;  // edges within ND(G)
  Mask live;               // nodes carrying infinite pseudo-orbits
};

PseudoOrbitGraph pseudo_orbit_graph(const FiniteRelation& g, Rational delta,
                                    int mode);

// Entries must lie in ND(G); every consecutive step (including the cycle
// wrap) must satisfy the mode-i condition at tolerance delta.
bool is_pseudo_orbit(const FiniteRelation& g, const Lasso<PointId>& p,
                     Rational delta, int mode);

// A legal point admitting a trajectory that tracks p strictly inside eps at
// every step, or nullopt. Ties resolved by point order.
std::optional<PointId> existential_shadower(const FiniteRelation& g,
                                            const Lasso<PointId>& p,
                                            Rational eps);

// All legal points whose every trajectory tracks p strictly inside eps.
Mask universal_shadowers(const FiniteRelation& g, const Lasso<PointId>& p,
                         Rational eps);

struct FinVerdict {
  int i = 0, j = 0;
  bool holds = false;
  std::vector<ScheduleEntry> schedule;
  std::optional<Rational> eps_star;
  std::optional<Lasso<PointId>> witness;
};

// Lowers the system onto the shared decision core and runs the quantifier
// loop. Throws FlaggedSystem when the legal set is empty.
FinVerdict decide_shadowing(const FiniteRelation& g, int i, int j);

// The per-(eps, delta) failure predicate behind decide_shadowing, exposed
// for cross-validation: a witness pseudo-orbit unshadowable at eps, if any.
std::optional<Lasso<PointId>> shadowing_failure_at(const FiniteRelation& g,
                                                   int i, int j, Rational eps,
                                                   Rational delta);

// Independent bounded oracle: enumerates lassos over the live pseudo-orbit
// graph ascending by total length (then lexicographically, cycle split
// ascending), checks each against the shadower ops, and returns the first
// unshadowed one. workBudget caps the enumeration on dense graphs; the
// explored region is exhaustive up to the point the budget runs out.
std::optional<Lasso<PointId>> falsify_bounded(const FiniteRelation& g, int i,
                                              int j, Rational eps,
                                              Rational delta, int maxLen,
                                              long workBudget = 400000);

struct ImplicationAudit {
  std::array<FinVerdict, 4> verdicts;  // order: (1,1), (1,2), (2,1), (2,2)
  bool ok = false;
  std::vector<std::string> violations;
};

// Decides all four properties and checks them against the implication
// diagram: (2,1) => (1,1), (2,1) => (2,2), (1,1) => (1,2), (2,2) => (1,2).
ImplicationAudit implication_audit(const FiniteRelation& g);

struct PowerAudit {
  int kmax = 0;
  bool ok = false;
  std::vector<std::string> violations;
};

// For k = 2..kmax: when (2,j) holds for G it holds for G^k (the reverse
// can fail: a square may be single-valued while the base is not), legal
// sets agree, and under the tower condition G <= G^2 <= ... <= G^kmax the
// (1,2) verdict propagates from G to each G^k.
PowerAudit power_audit(const FiniteRelation& g, int kmax);

}  // namespace crshadow
