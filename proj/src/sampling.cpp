#include "rplace/sampling.hpp"

namespace rplace {

long Sampler::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng_() % span);
}

Rational Sampler::rational(long num, long den) {
  const long d = integer(1, den);
  Rational r(integer(-num, num), d);
  r.canonicalize();
  return r;
}

Rational Sampler::nonzero_rational(long num, long den) {
  for (;;) {
    Rational r = rational(num, den);
    if (sgn(r) != 0) return r;
  }
}

GroupElem Sampler::elem(std::size_t dim, long num, long den) {
  GroupElem g(dim);
  for (auto& c : g.coords) c = rational(num, den);
  return g;
}

FieldElement Sampler::sum(const Field& F, int max_terms) {
  FieldElement x = F.constant(Quad(0));
  const long n = integer(1, max_terms);
  for (long i = 0; i < n; ++i) {
    const GroupElem e = elem(F.value_group().dim());
    x += F.monomial(e, Quad(nonzero_rational()));
  }
  return x;
}

FieldElement Sampler::element(const Field& F) {
  FieldElement x = sum(F);
  if (coin()) {
    const FieldElement d = sum(F);
    if (!d.is_zero()) x /= d;
  }
  return x;
}

GroupCut Sampler::position(const ValueGroup& G, bool allow_inf) {
  const long k = integer(allow_inf ? 0 : 2, 5);
  const GroupElem e = elem(G.dim());
  const auto level = [&] { return static_cast<std::size_t>(integer(0, static_cast<long>(G.num_blocks()))); };
  switch (k) {
    case 0: return GroupCut::minus_inf();
    case 1: return GroupCut::plus_inf();
    case 2: return canonical(G, GroupCut::above(e));
    case 3: return canonical(G, GroupCut::below(e));
    case 4: return canonical(G, GroupCut::coset_upper(e, level()));
    default: return canonical(G, GroupCut::coset_lower(e, level()));
  }
}

Ball Sampler::ball(const Field& F, bool allow_trivial) {
  FieldElement c = sum(F, 2);
  return Ball::make(F, std::move(c), FinalSegment{position(F.value_group(), allow_trivial)});
}

Poly Sampler::poly(const Field& F, const std::vector<std::string>& vars, int deg) {
  Poly p(F.ambient(), vars);
  const long n = integer(1, 3);
  for (long i = 0; i < n; ++i) {
    Exponents e(vars.size());
    for (auto& k : e) k = static_cast<int>(integer(0, deg));
    p.add_term(e, sum(F, 1));
  }
  return p;
}

RatFun Sampler::ratfun(const Field& F, const std::vector<std::string>& vars, int deg) {
  const Poly n = poly(F, vars, deg);
  if (coin()) return RatFun(n);
  const Poly d = poly(F, vars, deg);
  return d.is_zero() ? RatFun(n) : RatFun(n, d);
}

}  // namespace rplace
