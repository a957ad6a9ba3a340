#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace boxlogic {

/// Outcome of one exhaustive check. Failures are data, not exceptions.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::size_t failures = 0;
  /// First counterexample found, if any.
  std::optional<std::string> counterexample;
  /// Extra key/value facts recorded by the check (kept in insertion order).
  std::vector<std::pair<std::string, std::string>> notes;

  explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

  void fail(const std::string& what) {
    if (passed) counterexample = what;
    passed = false;
    ++failures;
  }
  void note(std::string key, std::string value) {
    notes.emplace_back(std::move(key), std::move(value));
  }
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

}  // namespace boxlogic
