#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

TEST_CASE("ball membership") {
  Towers w;
  const ValueGroup& G = w.H.value_group();
  const Ball B = Ball::make(w.H, w.H.constant(Quad(0)), FinalSegment{GroupCut::above(ge({0}))});
  CHECK(ball_contains(B, w.t()));
  CHECK_FALSE(ball_contains(B, w.H.constant(Quad(1))));
  const Ball B0 = Ball::make(w.H, w.H.constant(Quad(0)), FinalSegment{GroupCut::above(ge({2}))});
  CHECK(ball_contains(B0, w.t().pow(3)));
  CHECK_FALSE(ball_contains(B0, w.t().pow(2)));
  CHECK(to_string(B0) == "ball(0; above (2))");
  (void)G;
}

TEST_CASE("ball equality and recentering") {
  Towers w;
  const FinalSegment pos{GroupCut::above(ge({0}))};
  const FieldElement zero = w.H.constant(Quad(0));
  const Ball a = Ball::make(w.H, zero, pos);
  CHECK(ball_eq(a, Ball::make(w.H, w.t(), pos)));
  CHECK_FALSE(ball_eq(a, Ball::make(w.H, w.H.constant(Quad(1)), pos)));
  CHECK(ball_eq(Ball::point(w.H, w.t()), Ball::point(w.H, w.t())));
  CHECK_FALSE(ball_eq(Ball::point(w.H, w.t()), Ball::point(w.H, w.t() + w.t().pow(5))));
  // Mutual containment on samples.
  Gen g(1);
  for (int i = 0; i < 200; ++i) {
    const FieldElement x = random_element(g, w.H);
    CHECK(ball_contains(a, x) == ball_contains(Ball::make(w.H, w.t(), pos), x));
  }
}

TEST_CASE("distance sets") {
  Towers w;
  const ValueGroup& G = w.H.value_group();
  const FieldElement zero = w.H.constant(Quad(0));
  const Ball B = Ball::make(w.H, zero, FinalSegment{GroupCut::above(ge({0}))});
  CHECK(to_string(G, distance_sets(B)) == "upto (0)");
  CHECK(to_string(G, distance_sets(Ball::point(w.H, zero))) == "all");
  const Ball B0 = Ball::make(w.H, zero, FinalSegment{GroupCut::above(ge({2}))});
  const InitialSegment I = distance_sets(B0);
  CHECK(to_string(G, I) == "upto (2)");
  for (long k = -8; k <= 8; ++k) {
    const GroupElem gam = ge({q(k, 4)});
    CHECK(contains(G, I, gam) == (k <= 8));
    auto [d, e] = distance_pair(B0, gam);
    CHECK(*w.H.valuation(e - d) == gam);
    CHECK(side_of(Cut::edge(B0, Side::Lower), d) == Where::Below);
    CHECK(side_of(Cut::edge(B0, Side::Upper), e) == Where::Above);
  }
  CHECK_THROWS(distance_sets(Ball::make(w.H, zero, FinalSegment::all())));
}

TEST_CASE("balls are convex") {
  Towers w;
  Gen g(2);
  for (int i = 0; i < 200; ++i) {
    const Ball B = random_ball(g, w.F);
    const FieldElement a = B.center;
    const FieldElement c = random_element(g, w.F);
    const FieldElement b = random_element(g, w.F);
    if (!ball_contains(B, b) || (a - b).is_zero() || (a - c).is_zero()) continue;
    if (w.F.value_group().cmp(*valuation(a - c), *valuation(a - b)) != Ordering::Less) {
      CHECK(ball_contains(B, c));
    }
  }
}

TEST_CASE("nested or disjoint") {
  Towers w;
  Gen g(3);
  for (int i = 0; i < 300; ++i) {
    const Ball a = random_ball(g, w.F);
    const Ball b = random_ball(g, w.F);
    const BallRelation r = relate(a, b);
    const bool ca = ball_contains(b, a.center);
    const bool cb = ball_contains(a, b.center);
    switch (r) {
      case BallRelation::Disjoint: CHECK_FALSE(ca); CHECK_FALSE(cb); break;
      case BallRelation::Equal: CHECK(ca); CHECK(cb); break;
      case BallRelation::Inside: CHECK(ca); break;
      case BallRelation::Contains: CHECK(cb); break;
    }
  }
}
