#pragma once

// Algebraic invariant suites run by `dhecke selftest`.

#include <functional>
#include <string>
#include <vector>

namespace dhecke {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  // first failure, or a short summary
  double seconds = 0;
};

struct Suite {
  std::string name;
  std::function<SuiteResult()> run;
};

std::vector<Suite> selftest_suites();

/// Runs every suite, reporting each as it finishes.
std::vector<SuiteResult> run_selftest(const std::function<void(const SuiteResult&)>& on_result = {});

}  // namespace dhecke
