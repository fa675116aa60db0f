#include "crshadow/finite_system.hpp"

#include <algorithm>
#include <set>

namespace crshadow {

namespace {



void validate_metric(const std::vector<std::string>& labels,
                     const std::vector<std::vector<Rational>>& dist) {
  int n = (int)labels.size();
  if (n == 0) throw std::invalid_argument("metric space with no points");
  if (n > kMaxPoints) throw std::invalid_argument("metric space too large");
  std::set<std::string> seen(labels.begin(), labels.end());
  if ((int)seen.size() != n)
    throw std::invalid_argument("duplicate point labels");
  if ((int)dist.size() != n)
    throw std::invalid_argument("distance matrix shape mismatch");
  for (int a = 0; a < n; ++a) {
    if ((int)dist[a].size() != n)
      throw std::invalid_argument("distance matrix shape mismatch");
    if (!dist[a][a].is_zero())
      throw std::invalid_argument("nonzero diagonal distance");
    for (int b = 0; b < n; ++b) {
      if (dist[a][b] != dist[b][a])
        throw std::invalid_argument("asymmetric distance matrix");
      if (a != b && (dist[a][b].is_negative() || dist[a][b].is_zero()))
        throw std::invalid_argument("non-positive distance between distinct points");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (dist[a][c] > dist[a][b] + dist[b][c])
          throw std::invalid_argument("triangle inequality violated");
}

}  // namespace

int FiniteMetricSpace::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  throw std::invalid_argument("unknown point label: " + label);
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(
    std::vector<std::string> labels, std::vector<std::vector<Rational>> dist) {
  validate_metric(labels, dist);
  FiniteMetricSpace s;
  s.labels = std::move(labels);
  s.dist = std::move(dist);
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_line(std::vector<std::string> labels,
                                               std::vector<Rational> coords) {
  if (labels.size() != coords.size())
    throw std::invalid_argument("label/coordinate count mismatch");
  int n = (int)labels.size();
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) dist[a][b] = abs(coords[a] - coords[b]);
  return from_matrix(std::move(labels), std::move(dist));
}

std::vector<std::pair<PointId, PointId>> FiniteRelation::pairs() const {
  std::vector<std::pair<PointId, PointId>> out;
  for (PointId x = 0; x < size(); ++x)
    for_bits(succ[x], [&](PointId y) { out.emplace_back(x, y); });
  return out;
}

FiniteRelation FiniteRelation::make(
    SpacePtr space, const std::vector<std::pair<PointId, PointId>>& pairs) {
  std::vector<Mask> succ(space->size(), 0);
  for (auto [x, y] : pairs) {
    if (x < 0 || y < 0 || x >= space->size() || y >= space->size())
      throw std::invalid_argument("relation pair out of range");
    succ[x] |= bit(y);
  }
  return from_masks(std::move(space), std::move(succ));
}

FiniteRelation FiniteRelation::from_masks(SpacePtr space,
                                          std::vector<Mask> succ) {
  if ((int)succ.size() != space->size())
    throw std::invalid_argument("relation/space size mismatch");
  bool empty = true;
  for (Mask m : succ) empty = empty && m == 0;
  if (empty) throw FlaggedSystem("empty relation");
  FiniteRelation r;
  r.space = std::move(space);
  r.succ = std::move(succ);
  return r;
}

}  // namespace crshadow
