#pragma once

#include <ostream>

namespace sgf::cli {

// Runs one subcommand (generate, eval, sweep, attack, bench). CSV and edge
// list results go to --output-dir files, or to `out` when no directory is
// given; diagnostics go to `err`. Returns the process exit status.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv);

}  // namespace sgf::cli
