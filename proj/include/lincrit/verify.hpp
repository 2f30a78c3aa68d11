#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lincrit {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

// Suite names: pade (also "padé"), linalg, recurrence, asymptotics, criterion, all.
std::vector<std::string> suite_names();

// Runs the invariant checks of one suite (or all of them) with a seeded generator.
// Throws std::invalid_argument for an unknown suite.
std::vector<SuiteResult> run_suite(const std::string& name, std::uint64_t seed = 7);

}  // namespace lincrit
