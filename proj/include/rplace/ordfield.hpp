#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rplace/quad.hpp"
#include "rplace/valgroup.hpp"

namespace rplace {

struct Term {
  GroupElem exp;
  Quad coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Finite sum of monomials c * t^gamma, terms sorted by increasing exponent
/// (the first term is the leading one: smallest value, largest magnitude).
/// No zero coefficients, no repeated exponents.
class HahnSum {
 public:
  HahnSum() = default;
  static HahnSum monomial(GroupElem exp, Quad coeff);
  static HahnSum constant(const ValueGroup& G, Quad c);
  /// Sorts and merges arbitrary terms.
  static HahnSum from_terms(const ValueGroup& G, std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  const Term& last() const { return terms_.back(); }
  std::size_t size() const { return terms_.size(); }

  static HahnSum add(const ValueGroup& G, const HahnSum& a, const HahnSum& b);
  static HahnSum mul(const ValueGroup& G, const HahnSum& a, const HahnSum& b);
  HahnSum negated() const;
  HahnSum scaled(const GroupElem& shift, const Quad& c) const;

  friend bool operator==(const HahnSum&, const HahnSum&) = default;

  std::string str(const ValueGroup& G) const;

 private:
  std::vector<Term> terms_;
};

std::string monomial_text(const ValueGroup& G, const GroupElem& exp);

class HahnField;
using FieldPtr = std::shared_ptr<const HahnField>;

/// Representation field Frac(k[t^Gamma]) with k = Q or Q(sqrt d), ordered by
/// the sign of the leading coefficient (t is a positive infinitesimal).
/// A field may remember the field it was built from by adjoining one
/// infinitesimal; elements of the parent lift along that link.
class HahnField {
 public:
  static FieldPtr make(std::int64_t coeff_d, ValueGroup group, std::string name = "");

  std::int64_t coeff_radicand() const { return coeff_d_; }
  const ValueGroup& group() const { return group_; }
  const std::string& name() const { return name_; }
  const FieldPtr& parent() const { return parent_; }
  const std::vector<std::size_t>& parent_coord_map() const { return parent_map_; }

  bool admits(const Quad& c) const;
  std::string str() const;

  /// Coordinate map from an ancestor's group into this group, if `ancestor`
  /// is this field or one of its parents.
  std::optional<std::vector<std::size_t>> coord_map_from(const HahnField* ancestor) const;

 private:
  friend std::pair<FieldPtr, class FieldElement> adjoin_infinitesimal(const FieldPtr&, const GroupCut&, int,
                                                                      std::string);
  friend std::pair<FieldPtr, std::vector<class FieldElement>> adjoin_weighted_block(const FieldPtr&,
                                                                                    std::vector<Quad>, std::string);
  std::int64_t coeff_d_ = 1;
  ValueGroup group_;
  std::string name_;
  FieldPtr parent_;
  std::vector<std::size_t> parent_map_;
};

/// Fraction num/den of Hahn sums. Canonical form: den's leading term is
/// exactly 1 = 1*t^0; den == 1 whenever the division is exact.
/// Equality is equality of field elements, not of representations.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr F, Quad c);
  FieldElement(FieldPtr F, HahnSum num, HahnSum den = {});
  static FieldElement monomial(FieldPtr F, GroupElem exp, Quad coeff = Quad(1));

  const FieldPtr& field() const { return field_; }
  const ValueGroup& group() const { return field_->group(); }
  const HahnSum& num() const { return num_; }
  const HahnSum& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  int sign() const;
  /// Leading-exponent valuation; nullopt encodes v(0) = infinity.
  std::optional<GroupElem> valuation() const;
  /// Coefficient of the leading term of the expansion.
  Quad leading_coeff() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement inverse() const;
  FieldElement pow(long n) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string str() const;

 private:
  void normalize();
  void require_same_field(const FieldElement& o) const;

  FieldPtr field_;
  HahnSum num_;
  HahnSum den_;
};

Ordering cmp_field(const FieldElement& x, const FieldElement& y);
inline bool operator<(const FieldElement& x, const FieldElement& y) {
  return cmp_field(x, y) == Ordering::Less;
}
std::optional<GroupElem> valuation(const FieldElement& x);

struct Expansion {
  HahnSum terms;          // all terms with exponent <= cutoff
  bool tail = false;      // a nonzero remainder is left beyond the cutoff
  bool exhausted = false; // stopped by the step bound before reaching the cutoff
};

inline constexpr std::size_t kDefaultMaxSteps = 64;

/// Long division of the numerator by the denominator, emitting terms in
/// increasing exponent order up to and including `cutoff`.
Expansion expand(const FieldElement& x, const GroupElem& cutoff, std::size_t max_steps = kDefaultMaxSteps);

/// Lazily produces expansion terms in increasing exponent order.
class ExpansionStream {
 public:
  explicit ExpansionStream(const FieldElement& x);
  /// Next term, or nullopt when the expansion is finite and complete.
  std::optional<Term> next();
  /// x minus the terms produced so far, as an exact field element.
  FieldElement remainder() const;

 private:
  FieldElement x_;
  HahnSum rest_;
};

/// Residue in the coefficient field, or infinity (nullopt) if v(x) < 0.
std::optional<Quad> residue(const FieldElement& x);

/// Lift an element into a field descended from its own by adjunctions.
/// Constants of a rank-0 field embed into any field admitting them.
FieldElement lift(const FieldElement& x, const FieldPtr& target);
GroupElem lift_exponent(const GroupElem& g, const std::vector<std::size_t>& coord_map, std::size_t dim);
/// Inverse of lift: the element of `ancestor` that lifts to x, if any.
std::optional<FieldElement> descend(const FieldElement& x, const FieldPtr& ancestor);
/// Same for a group element; nullopt if a coordinate outside the image is set.
std::optional<GroupElem> descend_exponent(const GroupElem& g, const std::vector<std::size_t>& coord_map,
                                          std::size_t ancestor_dim);

/// Coefficient of t^gamma in the expansion of x (0 if absent). Throws
/// std::runtime_error if the step bound is hit first.
Quad coefficient_at(const FieldElement& x, const GroupElem& gamma, std::size_t max_steps = kDefaultMaxSteps);

/// Adjoin a positive or negative infinitesimal whose value sits exactly at
/// position `at` of the group: gamma < v(eps) iff gamma is below `at`.
std::pair<FieldPtr, FieldElement> adjoin_infinitesimal(const FieldPtr& F, const GroupCut& at, int sign,
                                                       std::string name = "");
/// Adjoins positive infinitesimals eps_1..eps_n below every element of F
/// whose valuations span one archimedean block with v(eps_i) = weights[i].
std::pair<FieldPtr, std::vector<FieldElement>> adjoin_weighted_block(const FieldPtr& F, std::vector<Quad> weights,
                                                                     std::string name = "");

/// Ordered subfield of a representation field: elements whose exponents lie
/// in a coordinate subgroup and whose coefficients are rational (if
/// requested). Membership is decided on the canonical representation.
class Field {
 public:
  Field() = default;
  static Field full(FieldPtr ambient, std::string name = "");
  static Field sub(FieldPtr ambient, bool rational_coeffs, CoordSubgroup coords, std::string name = "");

  const FieldPtr& ambient() const { return ambient_; }
  bool rational_coeffs() const { return rational_coeffs_; }
  const CoordSubgroup& coords() const { return emb_->coords(); }
  const SubgroupEmbedding& embedding() const { return *emb_; }
  const ValueGroup& value_group() const { return emb_->sub(); }
  const std::string& name() const { return name_; }

  bool contains(const FieldElement& x) const;
  bool admits_coeff(const Quad& c) const;
  /// Valuation in this field's own value group (projected coordinates).
  std::optional<GroupElem> valuation(const FieldElement& x) const;
  FieldElement monomial(const GroupElem& own_exp, Quad c = Quad(1)) const;
  FieldElement constant(Quad c) const { return FieldElement(ambient_, std::move(c)); }

  bool is_subfield_of(const Field& F) const;
  /// Same subfield, viewed inside an extension of the ambient field.
  Field lifted(const FieldPtr& extension) const;
  /// The value-group embedding of this field into a superfield.
  SubgroupEmbedding value_embedding_into(const Field& F) const;

  std::string str() const;
  friend bool operator==(const Field& a, const Field& b);

 private:
  FieldPtr ambient_;
  bool rational_coeffs_ = false;
  std::shared_ptr<const SubgroupEmbedding> emb_;
  std::string name_;
};

/// Adjoin to a subfield view: the infinitesimal is placed at the supremum
/// (in the ambient group) of the part of the subfield's group below `at`.
std::pair<FieldPtr, FieldElement> adjoin_infinitesimal(const Field& F, const GroupCut& at, int sign,
                                                       std::string name = "");

}  // namespace rplace
