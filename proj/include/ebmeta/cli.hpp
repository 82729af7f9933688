#pragma once

#include <iosfwd>

namespace ebmeta::cli
{

inline constexpr const char* tool_version = "0.1.0";

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;     // usage, parse and name errors
inline constexpr int exit_violation = 2; // static violations, failed POs, rejected or non-equivalent splits
inline constexpr int exit_runtime = 3;   // simulation warnings, step errors, bad initial states

// Entry point of the `ebmeta` executable. The report goes to `out`, the
// human-readable summary to `err`.
int run( int argc, const char* const* argv, std::ostream& out, std::ostream& err );

} // namespace ebmeta::cli
