#pragma once
// Structural operations on finite closed relations: non-degenerate and legal
// sets, powers, inverses, Mahavier words, trajectory lassos, set-valued
// function decompositions, and conjugation along bijections.

#include <optional>
#include <vector>

#include "crshadow/finite_system.hpp"
#include "crshadow/lasso.hpp"

namespace crshadow {

// Points with at least one successor.
Mask nondegenerate_set(const FiniteRelation& g);

// Greatest subset L with G(x) meeting L for every x in L; exactly the points
// carrying infinite trajectories. Computed by iterated pruning.
Mask legal_set(const FiniteRelation& g);

// G restricted to legal x legal. Throws FlaggedSystem when legal is empty.
FiniteRelation restrict_to_legal(const FiniteRelation& g);

// k-fold composition, k >= 1. Throws FlaggedSystem if the power is empty.
FiniteRelation relation_power(const FiniteRelation& g, int k);

FiniteRelation inverse(const FiniteRelation& g);

// Words <x_0, ..., x_m> with every consecutive pair in G; m = 0 gives the
// points as one-letter words.
std::vector<std::vector<PointId>> mahavier_product(const FiniteRelation& g,
                                                   int m);

// All eventually periodic trajectories of x with |prefix|+|cycle| bounded by
// maxLen (default |X|*(|X|+1)), as canonical lassos in deterministic order.
std::vector<Lasso<PointId>> trajectory_lassos(const FiniteRelation& g,
                                              PointId x, int maxLen = -1);

// True iff every legal point has exactly one trajectory, i.e. the fiber of
// the legal restriction is a singleton at every legal point.
bool unique_trajectories(const FiniteRelation& g);

// F_k = {(x,y) : y in G^k(x) and x in G^(n-k)(y)}; requires the diagonal
// inside G^n (the set-valued decomposition hypothesis) and 0 <= k <= n.
FiniteRelation f_k_relation(const FiniteRelation& g, int n, int k);

// The function x -> y when every fiber is a singleton and ND(G) = X.
std::optional<std::vector<PointId>> as_function_graph(const FiniteRelation& g);

struct ConjugateResult {
  FiniteRelation image;
  bool isometric;  // whether the bijection preserved all distances
};

// Transports G along the bijection x -> target point perm[x].
ConjugateResult conjugate(const FiniteRelation& g,
                          const std::vector<PointId>& perm, SpacePtr target);

}  // namespace crshadow
