#pragma once

#include <string>

#include "rplace/ordfield.hpp"

namespace rplace {

/// B_S(a, F) = { b in F : v(a - b) in S or b = a }, with S a final segment of
/// the field's own value group. Every member is a center.
struct Ball {
  Field field;
  FieldElement center;
  FinalSegment radius;

  /// Checks that the center lies in the field; canonicalizes the radius.
  static Ball make(Field F, FieldElement center, FinalSegment S);
  static Ball point(Field F, FieldElement a) { return make(std::move(F), std::move(a), FinalSegment::empty()); }

  bool is_whole() const { return radius.is_all(); }
  bool is_singleton() const { return radius.is_empty(); }
};

bool ball_contains(const Ball& B, const FieldElement& x);
bool ball_eq(const Ball& a, const Ball& b);

/// Balls are nested or disjoint. Inside: a is a proper subset of b.
enum class BallRelation { Disjoint, Equal, Inside, Contains };
BallRelation relate(const Ball& a, const Ball& b);
const char* to_string(BallRelation r);

/// The common value set v(E - D) = v(E - B) = v(B - D) of the complement
/// pair D < B < E, namely vF minus S. Throws for the whole field.
InitialSegment distance_sets(const Ball& B);

/// An element c with v(c) = gamma; a - c < B < a + c realizes gamma as a
/// distance between the two sides of the complement.
std::pair<FieldElement, FieldElement> distance_pair(const Ball& B, const GroupElem& gamma);

/// "ball(<center>; <segment>)".
std::string to_string(const Ball& B);

}  // namespace rplace
