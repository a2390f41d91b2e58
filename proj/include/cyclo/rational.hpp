#pragma once

#include <compare>
#include <numeric>
#include <string>

#include "cyclo/error.hpp"
#include "cyclo/numtheory.hpp"

namespace cyclo {

namespace detail {
constexpr i128 gcd128(i128 a, i128 b) noexcept {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace detail

/// Exact fraction num/den with den > 0, kept in lowest terms.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  constexpr Rational() = default;
  Rational(i64 n, i64 d) : num(n), den(d) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i64 g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return static_cast<i128>(a.num) * b.den <=> static_cast<i128>(b.num) * a.den;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    const i128 n = static_cast<i128>(a.num) * b.den - static_cast<i128>(b.num) * a.den;
    const i128 d = static_cast<i128>(a.den) * b.den;
    const i128 g = detail::gcd128(n, d);
    return Rational(static_cast<i64>(n / (g ? g : 1)), static_cast<i64>(d / (g ? g : 1)));
  }
};

}  // namespace cyclo
