#include "rplace/quad.hpp"

#include <cmath>

namespace rplace {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  if (sgn(q.get_den()) == 0) throw std::domain_error("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_squarefree(std::int64_t d) {
  if (d < 2) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

Quad::Quad(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0 && !is_squarefree(d_)) {
    throw std::domain_error("radicand must be squarefree and > 1: " + std::to_string(d_));
  }
  normalize();
}

Quad Quad::sqrt_of(std::int64_t d) {
  if (d < 0) throw std::domain_error("sqrt of negative number");
  // Pull out square factors so the radicand is squarefree.
  std::int64_t outside = 1;
  std::int64_t inside = d;
  for (std::int64_t p = 2; p * p <= inside; ++p) {
    while (inside % (p * p) == 0) {
      inside /= p * p;
      outside *= p;
    }
  }
  if (inside <= 1) return Quad(Rational(outside * inside));
  return Quad(Rational(0), Rational(outside), inside);
}

void Quad::normalize() {
  if (sgn(b_) == 0) d_ = 1;
}

std::int64_t Quad::common_radicand(const Quad& x, const Quad& y) {
  if (x.d_ == 1) return y.d_;
  if (y.d_ == 1 || x.d_ == y.d_) return x.d_;
  throw std::domain_error("cannot mix sqrt(" + std::to_string(x.d_) + ") and sqrt(" +
                          std::to_string(y.d_) + ")");
}

int Quad::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  return lhs > rhs ? sa : sb;
}

Quad Quad::operator-() const {
  Quad r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Quad& Quad::operator+=(const Quad& o) {
  d_ = common_radicand(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Quad& Quad::operator-=(const Quad& o) { return *this += -o; }

Quad& Quad::operator*=(const Quad& o) {
  const std::int64_t d = common_radicand(*this, o);
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

Quad Quad::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  const Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  Quad r;
  r.a_ = a_ / norm;
  r.b_ = -b_ / norm;
  r.d_ = d_;
  r.normalize();
  return r;
}

Quad& Quad::operator/=(const Quad& o) { return *this *= o.inverse(); }

std::string Quad::str() const {
  if (is_rational()) return to_string(a_);
  std::string rad = "sqrt(" + std::to_string(d_) + ")";
  std::string bpart;
  if (b_ == 1) {
    bpart = rad;
  } else if (b_ == -1) {
    bpart = "-" + rad;
  } else {
    bpart = to_string(b_) + "*" + rad;
  }
  if (sgn(a_) == 0) return bpart;
  if (sgn(b_) > 0) return to_string(a_) + "+" + bpart;
  return to_string(a_) + bpart;
}

bool Quad::is_compound() const {
  if (is_rational()) return sgn(a_) < 0 || a_.get_den() != 1;
  return true;
}

double Quad::approx() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

mpz_class floor(const Quad& x) {
  // Start from the floating estimate and correct exactly.
  mpz_class f(std::floor(x.approx()));
  while (Quad(Rational(f)) > x) f -= 1;
  while (Quad(Rational(f + 1)) <= x) f += 1;
  return f;
}

}  // namespace rplace
