#include "rplace/ratfun.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>

namespace rplace {

Poly::Poly(FieldPtr F, std::vector<std::string> vars) : field_(std::move(F)), vars_(std::move(vars)) {}

Poly Poly::constant(FieldPtr F, std::vector<std::string> vars, const FieldElement& c) {
  Poly p(std::move(F), std::move(vars));
  p.add_term(Exponents(p.vars_.size(), 0), c);
  return p;
}

Poly Poly::variable(FieldPtr F, std::vector<std::string> vars, const std::string& name) {
  Poly p(F, std::move(vars));
  const auto it = std::find(p.vars_.begin(), p.vars_.end(), name);
  if (it == p.vars_.end()) throw std::invalid_argument("unknown variable " + name);
  Exponents e(p.vars_.size(), 0);
  e[static_cast<std::size_t>(it - p.vars_.begin())] = 1;
  p.add_term(e, FieldElement(F, Quad(1)));
  return p;
}

std::optional<FieldElement> Poly::as_constant() const {
  if (terms_.empty()) return FieldElement(field_, Quad(0));
  if (terms_.size() != 1) return std::nullopt;
  const auto& [e, c] = *terms_.begin();
  if (std::any_of(e.begin(), e.end(), [](int k) { return k != 0; })) return std::nullopt;
  return c;
}

const std::pair<const Exponents, FieldElement>& Poly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

int Poly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void Poly::add_term(const Exponents& e, const FieldElement& c) {
  if (e.size() != vars_.size()) throw std::invalid_argument("exponent tuple does not match the variables");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void Poly::require_compatible(const Poly& o) const {
  if (field_ != o.field_) throw std::invalid_argument("polynomials over different fields");
  if (vars_ != o.vars_) throw std::invalid_argument("polynomials in different variables");
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Poly Poly::scaled(const FieldElement& c) const {
  Poly p(field_, vars_);
  if (c.is_zero()) return p;
  for (const auto& [e, a] : terms_) p.terms_.emplace(e, a * c);
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  a.require_compatible(b);
  Poly p = a;
  for (const auto& [e, c] : b.terms_) p.add_term(e, c);
  return p;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  a.require_compatible(b);
  Poly p(a.field_, a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  }
  return p;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_ || a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (it->first != e || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

namespace {

bool plain_rational(const std::string& s) {
  static const std::regex re("-?[0-9]+(/[0-9]+)?");
  return std::regex_match(s, re);
}

std::string monomial(const std::vector<std::string>& vars, const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const std::string m = monomial(vars_, it->first);
    std::string c = it->second.str();
    if (!plain_rational(c)) c = "(" + c + ")";
    std::string piece;
    if (m.empty()) {
      piece = c;
    } else if (c == "1") {
      piece = m;
    } else if (c == "-1") {
      piece = "-" + m;
    } else {
      piece = c + "*" + m;
    }
    if (!s.empty() && piece.front() != '-') s += "+";
    s += piece;
  }
  return s;
}

// ---------------------------------------------------------------------------

RatFun::RatFun(Poly num) : num_(std::move(num)) {
  den_ = Poly::constant(num_.field(), num_.vars(), FieldElement(num_.field(), Quad(1)));
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.field() != den_.field() || num_.vars() != den_.vars()) {
    throw std::invalid_argument("numerator and denominator do not match");
  }
  normalize();
}

RatFun RatFun::constant(FieldPtr F, std::vector<std::string> vars, const FieldElement& c) {
  return RatFun(Poly::constant(std::move(F), std::move(vars), c));
}

RatFun RatFun::variable(FieldPtr F, std::vector<std::string> vars, const std::string& name) {
  return RatFun(Poly::variable(std::move(F), std::move(vars), name));
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), num_.vars(), FieldElement(num_.field(), Quad(1)));
    return;
  }
  const FieldElement lead = den_.leading().second;
  if (auto c = den_.as_constant()) {
    num_ = num_.scaled(c->inverse());
    den_ = Poly::constant(num_.field(), num_.vars(), FieldElement(num_.field(), Quad(1)));
    return;
  }
  if (lead == FieldElement(num_.field(), Quad(1))) return;
  const FieldElement inv = lead.inverse();
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

std::optional<FieldElement> RatFun::as_constant() const {
  const auto d = den_.as_constant();
  if (!d) return std::nullopt;
  const auto n = num_.as_constant();
  if (!n) return std::nullopt;
  return *n / *d;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFun(den_, num_);
}

RatFun RatFun::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  RatFun acc = constant(field(), vars(), FieldElement(field(), Quad(1)));
  RatFun base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.num_ == b.den_) return RatFun(b.num_, a.den_);
  if (b.num_ == a.den_) return RatFun(a.num_, b.den_);
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

bool operator==(const RatFun& a, const RatFun& b) {
  if (a.num_ == b.num_ && a.den_ == b.den_) return true;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFun RatFun::with_vars(const std::vector<std::string>& vars) const {
  std::vector<std::size_t> pos;
  for (const auto& v : this->vars()) {
    const auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) throw std::invalid_argument("variable " + v + " missing from the new list");
    pos.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  auto move = [&](const Poly& p) {
    Poly q(p.field(), vars);
    for (const auto& [e, c] : p.terms()) {
      Exponents f(vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) f[pos[i]] = e[i];
      q.add_term(f, c);
    }
    return q;
  };
  return RatFun(move(num_), move(den_));
}

std::string RatFun::str() const {
  if (den_.as_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------

namespace {

template <class T, class Lift>
T eval_generic(const Poly& p, const std::vector<T>& values, T zero, Lift lift_coeff) {
  std::vector<std::vector<T>> powers(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    powers[i].push_back(zero);  // placeholder for index 0, never read
    const int d = p.degree_in(i);
    for (int k = 1; k <= d; ++k) powers[i].push_back(k == 1 ? values[i] : powers[i].back() * values[i]);
  }
  T acc = zero;
  for (const auto& [e, c] : p.terms()) {
    T m = lift_coeff(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) m = m * powers[i][static_cast<std::size_t>(e[i])];
    }
    acc = acc + m;
  }
  return acc;
}

}  // namespace

FieldElement eval_poly(const Poly& p, const std::map<std::string, FieldElement>& assignment) {
  std::vector<FieldElement> values;
  FieldPtr E = p.field();
  for (const auto& v : p.vars()) {
    const auto it = assignment.find(v);
    if (it == assignment.end()) throw std::invalid_argument("no value for variable " + v);
    if (values.empty()) {
      E = it->second.field();
    } else if (it->second.field() != E) {
      throw std::invalid_argument("assigned values lie in different fields");
    }
    values.push_back(it->second);
  }
  return eval_generic<FieldElement>(p, values, FieldElement(E, Quad(0)),
                                    [&](const FieldElement& c) { return lift(c, E); });
}

EvalResult eval_at(const RatFun& f, const std::map<std::string, FieldElement>& assignment) {
  const FieldElement d = eval_poly(f.den(), assignment);
  if (d.is_zero()) return {};
  return {eval_poly(f.num(), assignment) / d};
}

std::optional<RatFun> compose(const RatFun& f, const std::map<std::string, RatFun>& images,
                              const std::vector<std::string>& vars) {
  // With x_i = n_i/d_i and D_i the degree of f in x_i, both p(x) * prod d_i^D_i
  // and q(x) * prod d_i^D_i are polynomials; their quotient is f(x).
  std::vector<Poly> nums, dens;
  std::vector<int> deg;
  for (std::size_t i = 0; i < f.vars().size(); ++i) {
    const auto& v = f.vars()[i];
    const int D = std::max(f.num().degree_in(i), f.den().degree_in(i));
    deg.push_back(D);
    const auto it = images.find(v);
    if (it == images.end()) {
      if (D > 0) throw std::invalid_argument("no image for variable " + v);
      nums.emplace_back(f.field(), vars);
      dens.emplace_back(f.field(), vars);
      continue;
    }
    if (it->second.field() != f.field()) throw std::invalid_argument("image over a different field");
    const RatFun r = it->second.with_vars(vars);
    nums.push_back(r.num());
    dens.push_back(r.den());
  }
  const FieldElement one(f.field(), Quad(1));
  auto powers = [&](const Poly& b, int D) {
    std::vector<Poly> out{Poly::constant(f.field(), vars, one)};
    for (int k = 1; k <= D; ++k) out.push_back(out.back() * b);
    return out;
  };
  std::vector<std::vector<Poly>> np, dp;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    np.push_back(powers(nums[i], deg[i]));
    dp.push_back(powers(dens[i], deg[i]));
  }
  auto homog = [&](const Poly& p) {
    Poly acc(f.field(), vars);
    for (const auto& [e, c] : p.terms()) {
      Poly m = Poly::constant(f.field(), vars, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (deg[i] == 0) continue;
        m = m * np[i][static_cast<std::size_t>(e[i])] * dp[i][static_cast<std::size_t>(deg[i] - e[i])];
      }
      acc = acc + m;
    }
    return acc;
  };
  Poly d = homog(f.den());
  if (d.is_zero()) return std::nullopt;
  return RatFun(homog(f.num()), std::move(d));
}

}  // namespace rplace
