#pragma once

#include <ostream>

namespace lsc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCellFailed = 1;
inline constexpr int kExitConfigError = 2;

// lscgnn command line: run, sweep, table, hetero, convert-planetoid.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lsc
