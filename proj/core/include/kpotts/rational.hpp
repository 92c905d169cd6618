#pragma once

#include <compare>
#include <iosfwd>
#include <string>

#include "kpotts/types.hpp"

namespace kpotts {

/// Exact fraction num/den with den > 0 and gcd(num, den) = 1.
/// Comparisons widen to 128 bits; arithmetic throws ScalingError on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(Cost value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor): integers promote implicitly
  Rational(Cost num, Cost den);

  Cost num() const { return num_; }
  Cost den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Largest integer <= value.
  Cost floor() const;

  std::string str() const;

 private:
  Cost num_ = 0;
  Cost den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational clamp(const Rational& v, const Rational& lo, const Rational& hi);

/// Least common multiple with overflow detection.
Cost checked_lcm(Cost a, Cost b);

}  // namespace kpotts
