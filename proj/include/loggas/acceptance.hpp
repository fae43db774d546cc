#ifndef LOGGAS_ACCEPTANCE_HPP
#define LOGGAS_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace loggas {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the numbered verification criteria (all when `ids` is empty), printing
// one PASS/FAIL line per criterion to `log`. Returns the results.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream& log);

}  // namespace loggas

#endif
