#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rplace {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Element a + b*sqrt(d) of a real quadratic field Q(sqrt d), d squarefree > 1.
///
/// Rational values are stored with b == 0 and d == 1 so that values from
/// different quadratic fields can still be mixed as long as at most one of
/// them is irrational. Mixing two distinct irrational radicands throws
/// std::domain_error. sqrt(d) always denotes the positive real root.
class Quad {
 public:
  Quad() = default;
  Quad(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Quad(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  Quad(Rational a, Rational b, std::int64_t d);

  static Quad sqrt_of(std::int64_t d);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  std::int64_t radicand() const { return d_; }

  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  /// Exact sign of the real number a + b*sqrt(d).
  int sign() const;

  Quad operator-() const;
  Quad& operator+=(const Quad& o);
  Quad& operator-=(const Quad& o);
  Quad& operator*=(const Quad& o);
  Quad& operator/=(const Quad& o);
  Quad inverse() const;

  friend Quad operator+(Quad x, const Quad& y) { return x += y; }
  friend Quad operator-(Quad x, const Quad& y) { return x -= y; }
  friend Quad operator*(Quad x, const Quad& y) { return x *= y; }
  friend Quad operator/(Quad x, const Quad& y) { return x /= y; }

  friend bool operator==(const Quad& x, const Quad& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const Quad& x, const Quad& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Parsable text: "7/5", "sqrt(2)", "1/2+3*sqrt(2)", "-sqrt(3)".
  std::string str() const;
  /// True if str() needs parentheses when used as a factor.
  bool is_compound() const;

  double approx() const;

 private:
  void normalize();
  static std::int64_t common_radicand(const Quad& x, const Quad& y);

  Rational a_{0};
  Rational b_{0};
  std::int64_t d_ = 1;
};

/// Largest integer <= x.
mpz_class floor(const Quad& x);

bool is_squarefree(std::int64_t d);

}  // namespace rplace
