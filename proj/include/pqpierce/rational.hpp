#pragma once

// Exact rational scalar type and its text form ("p/q", plain integer when q == 1).
// Everything downstream assumes arithmetic on Rational never rounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace pqpierce {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sgn(const Rational& r) { return r.sign(); }

inline Rational rat(long long num, long long den = 1) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(BigInt(num), BigInt(den));
}

inline Rational abs_r(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts optional sign, digits, optional "/digits". Denominator must be nonzero.
inline std::optional<Rational> parse_rational(const std::string& s) {
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rational(BigInt(s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    BigInt n(num), d(den);
    if (d == 0) return std::nullopt;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return Rational(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace pqpierce
