#include "rplace/balls.hpp"

#include <stdexcept>

namespace rplace {

Ball Ball::make(Field F, FieldElement center, FinalSegment S) {
  if (!F.contains(center)) throw std::invalid_argument("ball center " + center.str() + " not in " + F.str());
  S.boundary = canonical(F.value_group(), S.boundary);
  return Ball{std::move(F), std::move(center), std::move(S)};
}

bool ball_contains(const Ball& B, const FieldElement& x) {
  if (!B.field.contains(x)) throw std::invalid_argument(x.str() + " is not an element of " + B.field.str());
  const auto v = B.field.valuation(x - B.center);
  if (!v) return true;
  return contains(B.field.value_group(), B.radius, *v);
}

BallRelation relate(const Ball& a, const Ball& b) {
  if (!(a.field == b.field)) throw std::invalid_argument("balls over different fields");
  switch (cmp_segments(a.field.value_group(), a.radius, b.radius)) {
    case Ordering::Equal: return ball_contains(b, a.center) ? BallRelation::Equal : BallRelation::Disjoint;
    case Ordering::Less: return ball_contains(b, a.center) ? BallRelation::Inside : BallRelation::Disjoint;
    case Ordering::Greater: return ball_contains(a, b.center) ? BallRelation::Contains : BallRelation::Disjoint;
  }
  return BallRelation::Disjoint;
}

bool ball_eq(const Ball& a, const Ball& b) { return relate(a, b) == BallRelation::Equal; }

const char* to_string(BallRelation r) {
  switch (r) {
    case BallRelation::Disjoint: return "disjoint";
    case BallRelation::Equal: return "equal";
    case BallRelation::Inside: return "inside";
    case BallRelation::Contains: return "contains";
  }
  return "?";
}

InitialSegment distance_sets(const Ball& B) {
  if (B.is_whole()) throw std::invalid_argument("the whole field has no complement");
  return complement(B.radius);
}

std::pair<FieldElement, FieldElement> distance_pair(const Ball& B, const GroupElem& gamma) {
  if (contains(B.field.value_group(), B.radius, gamma)) {
    throw std::invalid_argument("value " + gamma.str() + " lies in the radius");
  }
  const FieldElement c = B.field.monomial(gamma);
  return {B.center - c, B.center + c};
}

std::string to_string(const Ball& B) {
  return "ball(" + B.center.str() + "; " + to_string(B.field.value_group(), B.radius) + ")";
}

}  // namespace rplace
