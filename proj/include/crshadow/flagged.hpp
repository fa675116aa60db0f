#pragma once
#include <stdexcept>

namespace crshadow {

// A system whose points cannot all carry trajectories: empty legal set,
// empty relation, and similar degeneracies the CLI reports as "flagged".
struct FlaggedSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace crshadow
