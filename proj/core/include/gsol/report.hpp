#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gsol {

/// Fixed-width scientific rendering with 12 significant digits.
std::string format_number(double x);

/// Structured text report: `[section]` headers followed by `key: value`
/// lines. Checks record value, tolerance and status and feed the exit code.
class Report {
 public:
  void section(const std::string& name);
  void field(const std::string& key, const std::string& value);
  void field(const std::string& key, const char* value) { field(key, std::string(value)); }
  void field(const std::string& key, double value);
  void field(const std::string& key, int value);
  void field(const std::string& key, std::size_t value);
  void field(const std::string& key, bool value);

  /// Passes when |value| <= tolerance (NaN fails).
  bool check(const std::string& name, double value, double tolerance);
  /// Passes when actual == expected.
  bool check_equal(const std::string& name, long long actual, long long expected);
  /// Records a failed check without a numeric value.
  void fail(const std::string& name, const std::string& reason);

  [[nodiscard]] bool all_passed() const { return failures_ == 0; }
  [[nodiscard]] int failures() const { return failures_; }
  [[nodiscard]] const std::string& str() const { return text_; }

 private:
  std::string text_;
  int failures_ = 0;
};

}  // namespace gsol
