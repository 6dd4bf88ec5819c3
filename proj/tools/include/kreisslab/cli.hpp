#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kreisslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kSchemaVersion = 1;

/// Runs `kreiss-lab` with args (args[0] is the program name). Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a..b" doubles from a up to b; otherwise a comma-separated list.
/// Throws std::invalid_argument on malformed input.
std::vector<std::int64_t> parse_int_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

}  // namespace kreisslab::cli
