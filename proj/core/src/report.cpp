#include "gsol/report.hpp"

#include <cmath>
#include <cstdio>

namespace gsol {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

void Report::section(const std::string& name) {
  if (!text_.empty()) text_ += '\n';
  text_ += "[" + name + "]\n";
}

void Report::field(const std::string& key, const std::string& value) { text_ += key + ": " + value + "\n"; }
void Report::field(const std::string& key, double value) { field(key, format_number(value)); }
void Report::field(const std::string& key, int value) { field(key, std::to_string(value)); }
void Report::field(const std::string& key, std::size_t value) { field(key, std::to_string(value)); }
void Report::field(const std::string& key, bool value) { field(key, std::string(value ? "true" : "false")); }

bool Report::check(const std::string& name, double value, double tolerance) {
  const bool pass = std::abs(value) <= tolerance;
  field(name + ".value", value);
  field(name + ".tolerance", tolerance);
  field(name + ".status", pass ? "pass" : "FAIL");
  if (!pass) ++failures_;
  return pass;
}

bool Report::check_equal(const std::string& name, long long actual, long long expected) {
  const bool pass = actual == expected;
  field(name + ".value", std::to_string(actual));
  field(name + ".expected", std::to_string(expected));
  field(name + ".status", pass ? "pass" : "FAIL");
  if (!pass) ++failures_;
  return pass;
}

void Report::fail(const std::string& name, const std::string& reason) {
  field(name + ".status", "FAIL");
  field(name + ".reason", reason);
  ++failures_;
}

}  // namespace gsol
