#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rplace/cuts.hpp"

namespace testing_support {

using namespace rplace;

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline GroupElem ge(std::initializer_list<Rational> c) { return GroupElem(std::vector<Rational>(c)); }

/// Small deterministic generator with the helpers the property suites need.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }
  Rational rational(long num = 6, long den = 4) {
    const long d = integer(1, den);
    return q(integer(-num, num), d);
  }
  Rational nonzero_rational(long num = 6, long den = 4) {
    for (;;) {
      Rational r = rational(num, den);
      if (sgn(r) != 0) return r;
    }
  }
  GroupElem elem(std::size_t dim, long num = 4, long den = 3) {
    GroupElem g(dim);
    for (auto& c : g.coords) c = rational(num, den);
    return g;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
  }
};

/// A sum of a few monomials with small exponents of a field view.
inline FieldElement random_sum(Gen& g, const Field& F, int max_terms = 3) {
  FieldElement x = F.constant(Quad(0));
  const int n = static_cast<int>(g.integer(1, max_terms));
  for (int i = 0; i < n; ++i) x += F.monomial(g.elem(F.value_group().dim(), 3, 2), Quad(g.nonzero_rational()));
  return x;
}

/// Random element: a sum or a quotient of sums.
inline FieldElement random_element(Gen& g, const Field& F) {
  FieldElement x = random_sum(g, F);
  if (g.coin()) {
    FieldElement d = random_sum(g, F);
    if (!d.is_zero()) x /= d;
  }
  return x;
}

/// A random position of the group: above/below an element or a coset edge.
inline GroupCut random_position(Gen& g, const ValueGroup& G, bool allow_inf = true) {
  const long k = g.integer(allow_inf ? 0 : 2, 5);
  const GroupElem e = g.elem(G.dim(), 3, 2);
  switch (k) {
    case 0: return GroupCut::minus_inf();
    case 1: return GroupCut::plus_inf();
    case 2: return canonical(G, GroupCut::above(e));
    case 3: return canonical(G, GroupCut::below(e));
    case 4: return canonical(G, GroupCut::coset_upper(e, static_cast<std::size_t>(g.integer(0, G.num_blocks()))));
    default: return canonical(G, GroupCut::coset_lower(e, static_cast<std::size_t>(g.integer(0, G.num_blocks()))));
  }
}

inline Ball random_ball(Gen& g, const Field& F, bool allow_trivial = true) {
  return Ball::make(F, random_sum(g, F, 2), FinalSegment{random_position(g, F.value_group(), allow_trivial)});
}

/// The fields used throughout: A = H(Q; Q^2 lex) with the convex subfield
/// Rc (second coordinate) and the non-convex Rn (first coordinate); the
/// quadratic pair Q subset Q(sqrt 2) over Q; and the rank one field.
struct Towers {
  FieldPtr A = HahnField::make(1, ValueGroup::lex(2), "F");
  Field F = Field::full(A, "F");
  Field Rc = Field::sub(A, true, CoordSubgroup{{false, true}}, "Rc");
  Field Rn = Field::sub(A, true, CoordSubgroup{{true, false}}, "Rn");
  FieldPtr K = HahnField::make(2, ValueGroup::lex(1), "K");
  Field Kq = Field::sub(K, true, CoordSubgroup::whole(K->group()), "Kq");
  Field Kfull = Field::full(K, "K");
  FieldPtr Q1 = HahnField::make(1, ValueGroup::lex(1), "H");
  Field H = Field::full(Q1, "H");

  FieldElement s() const { return FieldElement::monomial(A, ge({1, 0})); }
  FieldElement u() const { return FieldElement::monomial(A, ge({0, 1})); }
  FieldElement t() const { return FieldElement::monomial(Q1, ge({1})); }
  FieldElement sqrt2() const { return FieldElement(K, Quad::sqrt_of(2)); }
};

}  // namespace testing_support
