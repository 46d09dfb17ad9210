// Runs every acceptance criterion and prints one line per criterion.
#include <iostream>

#include "cvlab/acceptance.hpp"

int main() {
  bool ok = true;
  int passed = 0;
  int total = 0;
  cvlab::run_suite(cvlab::Suite::All, [&](const cvlab::CriterionResult& r) {
    std::cout << cvlab::format_result(r) << std::endl;
    ok = ok && r.passed;
    passed += r.passed ? 1 : 0;
    ++total;
  });
  std::cout << passed << "/" << total << " acceptance checks passed\n";
  return ok ? 0 : 1;
}
