#pragma once

#include <iosfwd>

namespace manlp::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_negative = 1,
  exit_usage = 2,
  exit_budget = 3,
};

/// Runs one command. Tables go to `out`, diagnostics to `err`; a JSON
/// report is written to the path given by --json. MANLP_SEED, when set,
/// overrides --seed.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace manlp::cli
