#pragma once

#include "gbd/groupoid.hpp"

#include <iosfwd>
#include <string_view>

namespace gbd {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  exit_ok = 0,
  exit_validation = 2,
  exit_exhausted = 3,
  exit_size_cap = 4,
};

/// Parses a compact-set listing: one patch per line, `level label mover...`
/// as whitespace-separated integers. Blank lines and `#` comments are skipped.
CompactGroupoidSet parse_compact_set(std::string_view text, const SubgroupChain& chain);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbd
