// Verification suite driver: runs the numbered criteria and prints one
// PASS/FAIL line each. Usage: acceptance [criterion ...]
#include <cstdlib>
#include <iostream>
#include <vector>

#include "loggas/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  auto results = loggas::run_acceptance(ids, std::cout);
  if (results.empty()) {
    std::cerr << "no matching criteria\n";
    return 2;
  }
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
