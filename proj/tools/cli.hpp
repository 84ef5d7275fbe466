#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lptile::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInconclusive = 2;

/// Runs one subcommand. args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1,2;0,5" -> {{1,2},{0,5}}. Throws std::invalid_argument on malformed input.
std::vector<std::vector<long long>> parse_matrix(const std::string& text);

}  // namespace lptile::cli
