#include "gsol/fraction.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "gsol/errors.hpp"

namespace gsol {
namespace {

using wide = __int128;

std::int64_t narrow(wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw InputError("fraction arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

Fraction make(wide num, wide den) {
  if (den == 0) throw InputError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide a = num < 0 ? -num : num;
  wide b = den;
  while (b != 0) {
    wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Fraction(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("malformed fraction '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("fraction with zero denominator");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Fraction Fraction::parse(std::string_view text) {
  const std::string_view t = trim(text);
  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    const auto p = parse_int(trim(t.substr(0, slash)), t);
    const auto q = parse_int(trim(t.substr(slash + 1)), t);
    if (q == 0) throw InputError("fraction '" + std::string(t) + "' has zero denominator");
    return Fraction(p, q);
  }
  if (const auto dot = t.find('.'); dot != std::string_view::npos) {
    std::string_view ip = t.substr(0, dot);
    std::string_view fp = t.substr(dot + 1);
    bool neg = false;
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) {
      neg = ip.front() == '-';
      ip.remove_prefix(1);
    }
    if (fp.empty() || fp.size() > 15) throw InputError("malformed fraction '" + std::string(t) + "'");
    const std::int64_t whole = ip.empty() ? 0 : parse_int(ip, t);
    if (whole < 0) throw InputError("malformed fraction '" + std::string(t) + "'");
    const std::int64_t frac = parse_int(fp, t);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    const Fraction f = Fraction(whole) + Fraction(frac, den);
    return neg ? -f : f;
  }
  return Fraction(parse_int(t, t));
}

std::string Fraction::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  return make(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}
Fraction operator-(const Fraction& a, const Fraction& b) {
  return make(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}
Fraction operator*(const Fraction& a, const Fraction& b) {
  return make(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}
Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.num_ == 0) throw InputError("fraction division by zero");
  return make(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  const wide l = wide(a.num_) * b.den_;
  const wide r = wide(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Fraction Fraction::wrap_unit() const {
  // floor division of num by den
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return Fraction(num_ - q * den_, den_);
}

}  // namespace gsol
