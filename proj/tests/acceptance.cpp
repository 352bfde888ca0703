#include <iostream>

#include "spinal/verify.hpp"

int main() {
  int failures = 0;
  int index = 0;
  for (const auto& result : spinal::run_suite("all", 1)) {
    ++index;
    std::cout << "[" << (result.passed ? "PASS" : "FAIL") << "] " << index << " " << result.name << ": "
              << result.detail << std::endl;
    if (!result.passed) ++failures;
  }
  std::cout << (index - failures) << "/" << index << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
