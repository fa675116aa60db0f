#pragma once
// Seeded samplers of finite systems on the rational line, feeding the
// audits. Raw mt19937_64 output reduced by modulo keeps the streams
// identical across standard libraries; std distributions would not.

#include <random>
#include <vector>

#include "crshadow/finite_system.hpp"

namespace crshadow {

// n uniform in [2, maxSize] points at positions k/maxSize; each ordered
// pair kept with probability 1/2; the whole draw is repeated until
// legal(G) is nonempty (capped, then FlaggedSystem). maxSize < 2 throws.
FiniteRelation random_system(std::mt19937_64& rng, int maxSize);

// Same sampler with the diagonal forced in, making every point legal.
FiniteRelation random_system_with_diagonal(std::mt19937_64& rng, int maxSize);

// Same point layout with the graph of a distance-preserving permutation
// (identity or the reflection i -> n-1-i, coin flip) forced in; *perm
// receives f when non-null.
FiniteRelation random_system_with_isometry(std::mt19937_64& rng, int maxSize,
                                           std::vector<PointId>* perm = nullptr);

}  // namespace crshadow
