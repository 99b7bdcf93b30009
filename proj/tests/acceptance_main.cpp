#include <iostream>

#include "ewa/acceptance.hpp"

int main() {
  const auto results = ewa::run_acceptance({}, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += (!r.informational && !r.passed) ? 1 : 0;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
