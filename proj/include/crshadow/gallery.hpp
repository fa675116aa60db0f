#pragma once
// A catalogue of named example systems, each bundled with machine-checkable
// claims: exact falsifications (filters, deciders, witness replays) and
// seeded sampled verifications where the statement quantifies over a
// continuum. Running an item executes its claims and reports outcomes;
// nothing is asserted beyond what the engines certify.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crshadow/finite_system.hpp"
#include "crshadow/planar_relation.hpp"

namespace crshadow {

// System constructors, exposed separately so tests and converters can use
// them directly.

// Base segment [0,1] x {0}, plus vertical teeth at 0 and at 1/n for
// n = 1..N. Every point maps to 0, so ND = [0,1].
PlanarRelation comb_relation(int N);

// Identity union the constant-to-c line: {(x,x)} cup ([0,1] x {c}).
PlanarRelation diag_plus_line_relation(const Rational& c);

// The relation on [0,1] cup {2} whose square collapses: a band to 1, two
// affine strips, and an isolated fixed point.
PlanarRelation powers_relation();
// The square, written out directly from its known primitive inventory.
PlanarRelation powers_square_reference();

// Two fixed points plus a vertical segment fiber: ND = {0, 1/2, 1}.
PlanarRelation finite_nd_relation();

// The three-point line system whose inverse loses (2,1)-shadowing.
FiniteRelation inverse_relation();

// Ternary-grid truncations of middle-thirds dust: the points k/3^(depth-1)
// that admit a digit expansion avoiding 1. depth >= 1.
std::vector<Rational> cantor_points(int depth);

// Identity union jump-to-zero union fan-from-zero on the truncation.
FiniteRelation cantor_hub_system(int depth);

// Identity union an ascending chain toward the left cluster top union an
// ascending chain climbing to just below 1/3.
struct CantorChains {
  FiniteRelation system;
  std::vector<PointId> a_chain;  // starts at 0
  std::vector<PointId> b_chain;  // ends within 1/27 of 1/3
};
CantorChains cantor_chains_system(int depth);

// Claim machinery.

struct CheckOutcome {
  bool holds = false;
  std::string witness;  // human-readable evidence (values, sets, verdicts)
};

struct Claim {
  std::string name;      // stable identifier within the item
  std::string property;  // "(i,j)", "shift-shadowing", or "structural"
  bool expected_holds = true;
  bool skipped = false;
  std::string note;      // sampling caveats, skip reasons
  std::function<CheckOutcome()> check;  // absent when skipped
};

struct GalleryItem {
  std::string name;
  std::string summary;
  std::vector<Claim> claims;
};

struct ClaimReport {
  std::string item, claim, property;
  bool expected_holds = false, observed_holds = false;
  bool passed = false, skipped = false;
  std::string note, witness;
};

struct ItemReport {
  std::string item;
  std::vector<ClaimReport> claims;
  bool all_passed = false;
};

// Sorted stable item names.
std::vector<std::string> gallery_names();

// Builds one item. Recognized params (all optional, as decimal/fraction or
// integer strings): comb: N; diag_plus_line: c, n; cantor_hub and
// cantor_chains: depth. Unknown names or malformed values throw
// std::invalid_argument.
GalleryItem gallery_build(const std::string& name,
                          const std::map<std::string, std::string>& params);

// Executes every claim (skipped ones are reported, not run).
ItemReport gallery_run(const GalleryItem& item);

}  // namespace crshadow
