#pragma once
// JSON interchange: finite-system and planar-relation files, lasso, verdict
// and report payloads, and the finite <-> isolated-point planar bridge.
// Rationals travel as "p/q" or decimal strings; interval bounds in files
// are closed pairs [lo, hi].

#include <cstdint>
#include <string>

#include <json.hpp>

#include "crshadow/fin_shadow.hpp"
#include "crshadow/finite_system.hpp"
#include "crshadow/lasso.hpp"
#include "crshadow/planar_relation.hpp"

namespace crshadow {

// Throws std::invalid_argument with path and parser diagnostics.
nlohmann::json read_json_file(const std::string& path);

// { "points": [...], "metric": {"type":"line","coords":{...}} or
//   {"type":"matrix","dist":[[...]]}, "relation": [["a","b"], ...] }
FiniteRelation finite_system_from_json(const nlohmann::json& j);
// Always emits matrix form; loading it back rebuilds the same space.
nlohmann::json finite_system_to_json(const FiniteRelation& g);

// { "domain": [["0","1"],["2","2"]], "primitives": [{"kind":...}, ...] }
PlanarRelation planar_relation_from_json(const nlohmann::json& j);
nlohmann::json planar_relation_to_json(const PlanarRelation& r);

// {"prefix": ["a", ...], "cycle": ["b", ...]} with point labels.
nlohmann::json lasso_to_json(const FiniteMetricSpace& space,
                             const Lasso<PointId>& w);
Lasso<PointId> lasso_from_json(const FiniteMetricSpace& space,
                               const nlohmann::json& j);

// { "property": "2,1", "holds": ..., "schedule": [{"eps","delta"}, ...],
//   "epsilonStar": ..., "witness": ... }; absent pieces omitted.
nlohmann::json verdict_to_json(const FiniteMetricSpace& space,
                               const FinVerdict& v);

// Line-embedded finite system (labels parse as coordinates matching the
// metric) as an isolated-point planar relation, and back. The inverse
// direction accepts purely point-shaped relations only.
PlanarRelation finite_to_planar(const FiniteRelation& g);
FiniteRelation planar_to_finite(const PlanarRelation& r);

// FNV-1a over the canonical config string; reports embed it.
std::uint64_t fnv1a64(const std::string& s);

// {"version": "0.1.0", "configHash": "...", "command": ...}
nlohmann::json report_envelope(const std::string& command,
                               const std::string& config);

}  // namespace crshadow
