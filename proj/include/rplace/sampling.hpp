#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rplace/balls.hpp"
#include "rplace/ratfun.hpp"

namespace rplace {

/// Seeded generator for the sampling commands and probes. Draws are taken
/// from the raw engine output so that a seed gives the same stream with any
/// standard library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi);
  bool coin() { return integer(0, 1) == 1; }
  Rational rational(long num = 6, long den = 4);
  Rational nonzero_rational(long num = 6, long den = 4);
  GroupElem elem(std::size_t dim, long num = 3, long den = 2);

  /// Sum of a few monomials of the view with small exponents.
  FieldElement sum(const Field& F, int max_terms = 3);
  FieldElement element(const Field& F);
  GroupCut position(const ValueGroup& G, bool allow_inf = true);
  Ball ball(const Field& F, bool allow_trivial = true);
  Poly poly(const Field& F, const std::vector<std::string>& vars, int deg);
  RatFun ratfun(const Field& F, const std::vector<std::string>& vars, int deg = 2);

 private:
  std::mt19937_64 rng_;
};

}  // namespace rplace
