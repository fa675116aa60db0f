#include "crshadow/random_system.hpp"

#include <stdexcept>
#include <string>

#include "crshadow/fin_core.hpp"
#include "crshadow/flagged.hpp"

namespace crshadow {
namespace {

// Draw order is part of the protocol: n first, then the permutation coin
// when one is requested, then the pair coins in row-major order.
FiniteRelation sample(std::mt19937_64& rng, int maxSize, bool forceDiagonal,
                      bool forceIsometry, std::vector<PointId>* perm) {
  if (maxSize < 2) throw std::invalid_argument("sampler needs maxSize >= 2");
  if (maxSize > kMaxPoints) throw std::invalid_argument("sampler size cap exceeded");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    int n = 2 + (int)(rng() % (std::uint64_t)(maxSize - 1));
    std::vector<std::string> labels;
    std::vector<Rational> coords;
    for (int k = 0; k < n; ++k) {
      coords.push_back(Rational(k, maxSize));
      labels.push_back(coords.back().str());
    }
    std::vector<PointId> f(n);
    if (forceIsometry) {
      bool reflect = rng() % 2 == 1;
      for (int k = 0; k < n; ++k) f[k] = reflect ? n - 1 - k : k;
    }
    std::vector<Mask> succ(n, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rng() % 2 == 1) succ[x] |= bit(y);
    if (forceDiagonal)
      for (int x = 0; x < n; ++x) succ[x] |= bit(x);
    if (forceIsometry)
      for (int x = 0; x < n; ++x) succ[x] |= bit(f[x]);
    bool empty = true;
    for (int x = 0; x < n && empty; ++x) empty = succ[x] == 0;
    if (empty) continue;  // relations are non-empty by definition
    auto space = std::make_shared<const FiniteMetricSpace>(
        FiniteMetricSpace::from_line(labels, coords));
    FiniteRelation g = FiniteRelation::from_masks(space, std::move(succ));
    if (legal_set(g) == 0) continue;
    if (perm) *perm = f;
    return g;
  }
  throw FlaggedSystem("sampler found no live system in 1000 attempts");
}

}  // namespace

FiniteRelation random_system(std::mt19937_64& rng, int maxSize) {
  return sample(rng, maxSize, false, false, nullptr);
}

FiniteRelation random_system_with_diagonal(std::mt19937_64& rng, int maxSize) {
  return sample(rng, maxSize, true, false, nullptr);
}

FiniteRelation random_system_with_isometry(std::mt19937_64& rng, int maxSize,
                                           std::vector<PointId>* perm) {
  return sample(rng, maxSize, false, true, perm);
}

}  // namespace crshadow
