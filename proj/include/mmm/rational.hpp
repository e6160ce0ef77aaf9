#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace mmm {

using Int = boost::multiprecision::cpp_int;

/// Exact fraction in lowest terms with positive denominator.
///
/// The engine's sole scalar type. All arithmetic is exact; there is no
/// floating-point path anywhere. Decimal rendering (decimal()) is a
/// display-only approximation and never feeds back into computation.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(Int n) : num_(std::move(n)), den_(1) {}
  Rational(Int num, Int den);  // normalizes; throws std::domain_error if den == 0

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  Rational operator-() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // throws on b == 0

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  // Stored form is unique, so equality is structural.
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Canonical text form "p/q" with q > 0 and gcd(p, q) = 1.
  std::string str() const;

  /// Display-only decimal approximation to `digits` significant digits,
  /// computed by exact long division (no float involved).
  std::string decimal(int digits = 12) const;

  /// Parses "p/q" or "p" with optional leading sign. Throws
  /// std::invalid_argument on malformed input, std::domain_error on "p/0".
  static Rational parse(std::string_view text);

 private:
  Int num_, den_;
};

/// Exact mean of two rationals, (a + b) / 2.
Rational mean2(const Rational& a, const Rational& b);

/// Exponent of 2 in the denominator of q (q in lowest terms).
unsigned two_adic_denominator_exponent(const Rational& q);

/// Largest two-adic denominator exponent over a non-empty point list.
unsigned effective_exponent(std::span<const Rational> points);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace mmm

template <>
struct std::hash<mmm::Rational> {
  std::size_t operator()(const mmm::Rational& r) const {
    std::size_t seed = boost::hash<mmm::Int>{}(r.num());
    boost::hash_combine(seed, boost::hash<mmm::Int>{}(r.den()));
    return seed;
  }
};
