// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_RATIONAL_HPP
#define HPSR_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "hpsr/error.hpp"

namespace hpsr {

// Exact positive rational, always kept in coprime form. All scale arithmetic
// in the codec runs on these; floating point never touches coordinate math.
struct Rational {
  std::uint32_t num = 1;
  std::uint32_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d)
  {
    if (n == 0 || d == 0)
      throw ArgError("rational must be positive");
    std::uint64_t g = std::gcd(n, d);
    n /= g;
    d /= g;
    if (n > 0xffffffffULL || d > 0xffffffffULL)
      throw ArgError("rational out of range");
    num = static_cast<std::uint32_t>(n);
    den = static_cast<std::uint32_t>(d);
  }

  Rational inverse() const { return Rational(den, num); }

  friend bool operator==(const Rational& a, const Rational& b)
  {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b)
  {
    return !(a == b);
  }
  // Exact comparison via cross multiplication.
  friend bool operator<(const Rational& a, const Rational& b)
  {
    return std::uint64_t(a.num) * b.den < std::uint64_t(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b)
  {
    return std::uint64_t(a.num) * b.den <= std::uint64_t(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b)
  {
    return b <= a;
  }

  std::string str() const
  {
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Parses "a/b" or a bare integer "a" (meaning a/1).
Rational parse_rational(const std::string& text);

}  // namespace hpsr

#endif
