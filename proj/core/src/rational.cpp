#include "kpotts/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>

namespace kpotts {

namespace {

__extension__ typedef __int128 Wide;

Rational from_wide(Wide num, Wide den) {
  if (den == 0) throw ScalingError("division by zero in rational arithmetic");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr Wide kMax = std::numeric_limits<Cost>::max();
  if (num > kMax || num < -kMax || den > kMax) {
    throw ScalingError("rational value exceeds 64-bit range");
  }
  return Rational(static_cast<Cost>(num), static_cast<Cost>(den));
}

}  // namespace

Rational::Rational(Cost num, Cost den) {
  if (den == 0) throw ScalingError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Cost g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return from_wide(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return from_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return from_wide(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide lhs = Wide(a.num_) * b.den_;
  const Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Cost Rational::floor() const {
  Cost q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational clamp(const Rational& v, const Rational& lo, const Rational& hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}

Cost checked_lcm(Cost a, Cost b) {
  const Cost g = std::gcd(a, b);
  Cost out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) throw ScalingError("lcm overflow");
  return out < 0 ? -out : out;
}

}  // namespace kpotts
