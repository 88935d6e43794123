#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rplace/ordfield.hpp"

namespace rplace {

using Exponents = std::vector<int>;

/// Sparse polynomial over the elements of a Hahn fraction field.
class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr F, std::vector<std::string> vars);
  static Poly constant(FieldPtr F, std::vector<std::string> vars, const FieldElement& c);
  static Poly variable(FieldPtr F, std::vector<std::string> vars, const std::string& name);

  const FieldPtr& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, FieldElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Constant polynomials (including zero) as a field element.
  std::optional<FieldElement> as_constant() const;
  /// Term with the lexicographically greatest exponent tuple.
  const std::pair<const Exponents, FieldElement>& leading() const;
  int degree_in(std::size_t var) const;

  void add_term(const Exponents& e, const FieldElement& c);
  Poly operator-() const;
  Poly scaled(const FieldElement& c) const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

  std::string str() const;

 private:
  void require_compatible(const Poly& o) const;
  FieldPtr field_;
  std::vector<std::string> vars_;
  std::map<Exponents, FieldElement> terms_;
};

/// num/den with den's leading term monic. No gcd reduction beyond dropping
/// a constant denominator.
class RatFun {
 public:
  RatFun() = default;
  RatFun(Poly num);
  RatFun(Poly num, Poly den);
  static RatFun constant(FieldPtr F, std::vector<std::string> vars, const FieldElement& c);
  static RatFun variable(FieldPtr F, std::vector<std::string> vars, const std::string& name);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  const std::vector<std::string>& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  std::optional<FieldElement> as_constant() const;

  RatFun operator-() const;
  RatFun inverse() const;
  RatFun pow(long n) const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  /// Equality as fractions (cross multiplication).
  friend bool operator==(const RatFun& a, const RatFun& b);

  /// The same function over a longer variable list containing vars().
  RatFun with_vars(const std::vector<std::string>& vars) const;

  std::string str() const;

 private:
  void normalize();
  Poly num_, den_;
};

/// Value of a substitution: an element, or a pole when the denominator
/// vanishes.
struct EvalResult {
  std::optional<FieldElement> value;
  bool pole() const { return !value.has_value(); }
  std::string str() const { return value ? value->str() : "pole"; }
};

/// Substitutes elements of one extension E of f's coefficient field.
EvalResult eval_at(const RatFun& f, const std::map<std::string, FieldElement>& assignment);
FieldElement eval_poly(const Poly& p, const std::map<std::string, FieldElement>& assignment);

/// Substitutes rational functions (over the same coefficient field) for the
/// variables; the result lives over `vars`. Returns nullopt on a pole.
std::optional<RatFun> compose(const RatFun& f, const std::map<std::string, RatFun>& images,
                              const std::vector<std::string>& vars);

}  // namespace rplace
