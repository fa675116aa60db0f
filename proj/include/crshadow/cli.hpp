#pragma once
// Command-line front end: decide verdicts on relation files, run the
// randomized audits, the example gallery, the sequence-space demos, and
// file conversions. Exit codes: 0 ok, 1 input or config error, 2 flagged
// system, 3 claim or audit failure.

#include <iosfwd>

namespace crshadow {

// argv[0] is the program name, as in main. All output goes to the given
// streams; identical arguments produce byte-identical output.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace crshadow
