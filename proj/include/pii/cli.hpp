#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pii/engine.hpp"

namespace pii::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

// Runs one command line (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "10:100:10" (start:stop:step, inclusive), "10,50,100" or "10".
std::vector<int> parse_n_values(std::string_view text);

// Summary printed by `solve`.
std::string format_solve_summary(const RunOutcome& outcome);

// One JSON object per line: each iteration, then a final summary line.
void write_trace(std::ostream& out, const RunOutcome& outcome);

}  // namespace pii::cli
