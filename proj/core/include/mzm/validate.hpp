#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mzm {

// One acceptance criterion: a physics claim the library must reproduce, with
// tolerances pinned in the implementation (validate.cpp), not configurable.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured values, one line
  double seconds = 0.0;
};

// Runs the full acceptance suite in order (1..11). Failures never throw out
// of this function: an exception inside a criterion marks it failed with the
// exception text. If `progress` is set, one "CRITERION <id> PASS|FAIL ..."
// line is streamed per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

// True iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

// Smallest absolute representative of x mod 2 pi.
double circular_distance(double x, double y);

} // namespace mzm
