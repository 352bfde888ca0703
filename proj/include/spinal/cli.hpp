#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spinal {

/// Exit codes of run_cli.
constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

/// Runs one command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace spinal
