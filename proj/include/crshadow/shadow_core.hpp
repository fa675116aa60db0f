#pragma once
// Shared decision core for the four shadowing properties on finite decision
// structures. A ShadowingInstance abstracts what the quantifier elimination
// actually needs: a finite pseudo-orbit alphabet with per-edge gap
// thresholds, a finite candidate (legal point) set with its transition
// relation, the node/candidate distance table, and the threshold ladder.
// Finite systems and planar relations with finite non-degenerate sets both
// lower to this structure.

#include <optional>
#include <string>
#include <vector>

#include "crshadow/finite_system.hpp"
#include "crshadow/lasso.hpp"
#include "crshadow/rational.hpp"

namespace crshadow {

struct ShadowingInstance {
  std::vector<std::string> node_label;
  // min_gap[x][x'] = inf distance from the fiber of x to x' (mode 2 edges);
  // max_gap[x][x'] = sup distance (mode 1 edges). Both attained: fibers are
  // finite or compact.
  std::vector<std::vector<Rational>> min_gap;
  std::vector<std::vector<Rational>> max_gap;
  std::vector<std::string> cand_label;
  std::vector<Mask> cand_succ;                  // legal-restricted transitions
  std::vector<std::vector<Rational>> dist;      // dist[node][cand]
  std::vector<Rational> ladder;                 // ascending distinct positive

  int nodes() const { return (int)node_label.size(); }
  int cands() const { return (int)cand_label.size(); }
};

struct ScheduleEntry {
  Rational eps, delta;
};

struct Verdict {
  int i = 0, j = 0;
  bool holds = false;
  std::vector<ScheduleEntry> schedule;    // on holds: one entry per eps class
  std::optional<Rational> eps_star;       // on fails: smallest failing class
  std::optional<Lasso<int>> witness;      // on fails: node-indexed pseudo-orbit
};

// Half the smallest ladder value: the representative of the sub-minimal
// delta class, where pseudo-orbit edge sets are smallest.
Rational subminimal_delta(const std::vector<Rational>& ladder);

struct InstanceGraph {
  std::vector<Mask> succ;
  Mask live;  // nodes with infinite continuations (greatest fixpoint)
};

// Edges x -> x' present iff the mode-i gap threshold is <= delta.
InstanceGraph instance_graph(const ShadowingInstance& inst, Rational delta,
                             int mode);

// Searches for a (delta,i)-pseudo-orbit not (eps,j)-shadowed by any
// candidate. Returns a node-indexed witness lasso, or nullopt when every
// pseudo-orbit is shadowed at this parameter pair. BFS order is fixed by
// node indices, so results are deterministic.
std::optional<Lasso<int>> instance_failure_at(const ShadowingInstance& inst,
                                              int i, int j, Rational eps,
                                              Rational delta);

// Full quantifier loop: for-all eps over ladder class representatives,
// exists-delta collapsed to the sub-minimal representative by monotonicity.
Verdict decide_instance(const ShadowingInstance& inst, int i, int j);

}  // namespace crshadow
