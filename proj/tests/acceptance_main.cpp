// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Run via ctest (label: acceptance) or directly.
#include <mzm/validate.hpp>

#include <iostream>

int main() {
  const auto results = mzm::run_acceptance(&std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::cout << "ACCEPTANCE " << (failed == 0 ? "PASS" : "FAIL") << " ("
            << results.size() - failed << "/" << results.size()
            << " criteria)" << std::endl;
  return failed == 0 ? 0 : 1;
}
