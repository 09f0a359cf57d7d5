#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace lehmer {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Dispatches one subcommand. `args` excludes the program name. Results go to
/// `out`; diagnostics and usage text go to `err`.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lehmer
