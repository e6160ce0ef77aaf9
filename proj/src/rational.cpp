#include "mmm/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace mmm {

namespace {

Int pow10(unsigned k) {
  Int r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

Rational::Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Int g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Int lhs = a.num_ * b.den_;
  const Int rhs = b.num_ * a.den_;
  const int c = lhs.compare(rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  return num_.str() + "/" + den_.str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 1) throw std::invalid_argument("Rational::decimal: digits must be positive");
  if (num_.is_zero()) return "0";
  const Int a = abs(num_);
  const Int& b = den_;

  // Decimal exponent e with a/b in [10^e, 10^(e+1)).
  long e = static_cast<long>(a.str().size()) - static_cast<long>(b.str().size());
  auto at_least = [&](long k) {  // a/b >= 10^k ?
    return k >= 0 ? a >= b * pow10(static_cast<unsigned>(k))
                  : a * pow10(static_cast<unsigned>(-k)) >= b;
  };
  if (at_least(e + 1)) ++e;
  if (!at_least(e)) --e;

  // First `digits` significant digits, rounded half away from zero.
  long shift = digits - 1 - e;
  Int n = a, d = b;
  if (shift >= 0)
    n *= pow10(static_cast<unsigned>(shift));
  else
    d *= pow10(static_cast<unsigned>(-shift));
  Int t = (2 * n + d) / (2 * d);
  std::string ds = t.str();
  if (static_cast<int>(ds.size()) > digits) {  // rounding carried into a new digit
    ++e;
    ds.pop_back();
  }

  std::string out;
  if (e >= -4 && e < digits) {
    if (e >= 0) {
      out = ds.substr(0, static_cast<size_t>(e) + 1);
      std::string frac = ds.substr(static_cast<size_t>(e) + 1);
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      if (!frac.empty()) out += "." + frac;
    } else {
      while (!ds.empty() && ds.back() == '0') ds.pop_back();
      out = "0." + std::string(static_cast<size_t>(-e - 1), '0') + ds;
    }
  } else {
    std::string frac = ds.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = ds.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(e);
  }
  return sign() < 0 ? "-" + out : out;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("Rational::parse: malformed rational '" + std::string(text) + "'");
  };
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  size_t slash = s.find('/');
  std::string_view ns = s.substr(0, slash);
  if (ns.empty()) return fail();
  for (char c : ns)
    if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
  Int num{std::string(ns)};
  Int den = 1;
  if (slash != std::string_view::npos) {
    std::string_view dsv = s.substr(slash + 1);
    if (dsv.empty()) return fail();
    for (char c : dsv)
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
    den = Int{std::string(dsv)};
  }
  return Rational(neg ? -num : num, den);
}

Rational mean2(const Rational& a, const Rational& b) {
  return Rational(a.num() * b.den() + b.num() * a.den(), 2 * a.den() * b.den());
}

unsigned two_adic_denominator_exponent(const Rational& q) {
  // den >= 1 and the fraction is reduced, so the 2-valuation is the index
  // of the lowest set bit.
  return lsb(q.den());
}

unsigned effective_exponent(std::span<const Rational> points) {
  if (points.empty())
    throw std::invalid_argument("effective_exponent: empty point list");
  unsigned e = 0;
  for (const Rational& p : points) e = std::max(e, two_adic_denominator_exponent(p));
  return e;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace mmm
