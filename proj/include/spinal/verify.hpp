#pragma once

// Verification suites shared by the command line and the acceptance runner.
// Every check is deterministic for a given seed.

#include <cstdint>
#include <string>
#include <vector>

namespace spinal {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

CheckResult check_recursion(std::uint64_t seed);
CheckResult check_diameter(std::uint64_t seed);
CheckResult check_figures(std::uint64_t seed);
CheckResult check_delta_copies(std::uint64_t seed);
CheckResult check_ball_identities(std::uint64_t seed);
CheckResult check_ends(std::uint64_t seed);
CheckResult check_isomorphism(std::uint64_t seed);
CheckResult check_common_prefix(std::uint64_t seed);
CheckResult check_limits(std::uint64_t seed);
CheckResult check_line(std::uint64_t seed);
CheckResult check_self_similarity(std::uint64_t seed);
CheckResult check_validator(std::uint64_t seed);

/// Suite names accepted by run_suite, "all" first.
std::vector<std::string> suite_names();

/// Runs the checks of one suite. Throws ParameterError for an unknown name.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

} // namespace spinal
