#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>

namespace fastgabor::tools {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,  // bad flags or I/O failure
    exit_guard = 2,  // numeric guard: oracle size limit or failed control column
};

/// Images larger than this many pixels need --force for the compare command.
inline constexpr std::size_t kOracleMaxPixels = std::size_t{1} << 18;

/// Minimum SER of the ExactFir control column in compare.
inline constexpr double kControlMinDb = 100.0;

/// "MxM" or "MyxMx"; a single number means a square window. Returns (My, Mx).
std::pair<std::size_t, std::size_t> parse_window(const char* text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fastgabor::tools
