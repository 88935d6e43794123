#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rplace/cuts.hpp"
#include "rplace/ratfun.hpp"

namespace rplace {

/// A value of a place: a real number in Q(sqrt d), infinity, or (for Gauss
/// places) a rational function over the residue field.
struct PlaceValue {
  enum class Kind { Finite, Infinite, Function };
  Kind kind = Kind::Infinite;
  Quad value;
  std::optional<RatFun> function;

  static PlaceValue finite(Quad q) { return {Kind::Finite, std::move(q), std::nullopt}; }
  static PlaceValue infinite() { return {Kind::Infinite, Quad(0), std::nullopt}; }
  static PlaceValue of_function(RatFun f) { return {Kind::Function, Quad(0), std::move(f)}; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  std::string str() const;
  friend bool operator==(const PlaceValue& a, const PlaceValue& b);
};

/// An R-place of R(x_1..x_n), given by a realization: an extension E of R's
/// ambient field and images of the variables, each carrying its own
/// infinitesimal so that f(realization) never hits an exact zero of the
/// denominator. The place sends f to the residue of f(realization).
/// Gauss places instead take residues coefficientwise, optionally followed by
/// a further place of the residue function field.
class RPlace {
 public:
  enum class Origin { FromCut, Stacked, Independent, Composed, Gauss, Custom };

  static RPlace realized(Field base, std::vector<std::string> vars, std::vector<FieldElement> values, Origin origin,
                         std::string description);
  /// The canonical residue place of the base field itself (no variables).
  static RPlace canonical(Field base);

  const Field& base() const { return base_; }
  const std::vector<std::string>& vars() const { return vars_; }
  Origin origin() const { return origin_; }
  const std::string& description() const { return description_; }
  bool is_gauss() const { return origin_ == Origin::Gauss; }

  const FieldPtr& realization_field() const { return E_; }
  const std::vector<FieldElement>& realization() const { return values_; }
  std::map<std::string, FieldElement> assignment() const;
  /// Image of one variable, lifted into the realization field.
  const FieldElement& image(const std::string& var) const;

  const std::optional<Cut>& cut() const { return cut_; }
  /// Gauss places: the place applied after the coefficientwise residue.
  const RPlace* outer() const { return outer_.get(); }

 private:
  friend RPlace place_from_cut(const Cut& C, const std::string& var);
  friend RPlace gauss_extension(const Field& F, std::vector<std::string> vars);
  friend RPlace constant_ext_embed(const RPlace& zeta, const Field& F);
  Field base_;
  std::vector<std::string> vars_;
  Origin origin_ = Origin::Custom;
  std::string description_;
  FieldPtr E_;
  std::vector<FieldElement> values_;
  std::optional<Cut> cut_;
  std::shared_ptr<const RPlace> outer_;
};
const char* to_string(RPlace::Origin o);

/// y realized by the cut's realization (see realize()).
RPlace place_from_cut(const Cut& C, const std::string& var);
/// x_i = a_i + eps_i with eps_i positive and infinitesimal over everything
/// before it; order[0] gets the smallest infinitesimal.
RPlace stacked_place(const Field& base, const std::map<std::string, FieldElement>& at,
                     const std::vector<std::string>& order);
/// x_i = a_i + eps_i with v(eps_i) = weights[i] in one archimedean block.
RPlace independent_place(const Field& base, const std::vector<std::string>& vars,
                         const std::vector<FieldElement>& at, const std::vector<Quad>& weights);
/// xi_y on F(vars): the residue applied coefficientwise.
RPlace gauss_extension(const Field& F, std::vector<std::string> vars);
/// zeta (a place of R(vars), R inside the residue field of F) composed after
/// xi_y on F(vars).
RPlace constant_ext_embed(const RPlace& zeta, const Field& F);
/// zeta composed with the rational place x_i -> images[x_i] of K(x), K the
/// function field of zeta. Image RatFuns are over zeta's base in zeta's
/// variables (constants when zeta has none).
RPlace rational_place_compose(const RPlace& zeta, const std::vector<std::string>& xs,
                              const std::vector<RatFun>& images);

PlaceValue eval_place(const RPlace& zeta, const RatFun& f);
/// zeta in H'(f): the value is finite and positive.
bool harrison(const RPlace& zeta, const RatFun& f);

/// Sub-assignment of a realized place.
RPlace place_restrict(const RPlace& zeta, const std::vector<std::string>& vars);
/// The cut a realized variable induces on the base field.
Cut induced_cut(const RPlace& zeta, const std::string& var);

/// Coefficientwise residue of f over F: nullopt means infinity.
std::optional<RatFun> gauss_residue(const RatFun& f);
/// Rank-zero field Q(sqrt d) used for residue function fields.
FieldPtr residue_field(std::int64_t d);

struct ThreeCase {
  int which = 0;  // 1: 1 + x/y, 2: 1 + y/x, 3: y^2/x^2
  RatFun f;
  PlaceValue value;
  bool certified = false;
};
/// Requires zeta(x) = zeta(y) = 0; returns f with zeta in H'(f).
ThreeCase three_case_witness(const RPlace& zeta, const std::string& x, const std::string& y);

struct Separation {
  RatFun f;
  PlaceValue first, second;
};
/// First candidate on which the two places take different values.
std::optional<Separation> separate(const RPlace& a, const RPlace& b, const std::vector<RatFun>& candidates);
/// Candidates separating the places of two inequivalent cuts of R:
/// y - c, 1/(y - c), (y - c)/m, m/(y - c) for c among the anchors and
/// find_between of the cuts and m = t^delta near their radii.
std::vector<RatFun> glue_candidates(const Cut& a, const Cut& b, const std::string& var);
/// 1 + prod (x_i - a_i)^{k_i} for exponents in [-k, k], smallest total degree first.
std::vector<RatFun> monomial_quotient_candidates(const Field& base, const std::vector<std::string>& vars,
                                                 const std::vector<FieldElement>& at, int k);
/// (x - (a + b)/2)/(b - a): value -1/2 at x = a and 1/2 at x = b.
RatFun separating_linear(const Field& base, const std::vector<std::string>& vars, const std::string& x,
                         const FieldElement& a, const FieldElement& b);

}  // namespace rplace
