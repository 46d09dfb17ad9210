#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cvlab {

enum class Suite { Exact, Asymptotic, Simulate, All };

Suite parse_suite(const std::string& name);
std::string to_string(Suite suite);

struct CriterionResult {
  int id = 0;  // 0 for the overall runtime line
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0;
};

/// Criteria in a suite: exact 1-4, asymptotic 5-10, simulate 11-13.
std::vector<int> suite_criteria(Suite suite);

CriterionResult run_criterion(int id);

/// Runs every criterion of `suite` in order, calling `on_result` after each
/// one; `All` also appends the overall runtime line.
std::vector<CriterionResult> run_suite(Suite suite,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  endpoint identities  measured=... expected=... (0.41 s)"
std::string format_result(const CriterionResult& result);

}  // namespace cvlab
