#include <doctest.h>

#include "rplace/expr.hpp"
#include "rplace/places.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

struct Fix : Towers {
  FieldPtr Q0 = HahnField::make(1, ValueGroup::lex(0), "Q");
  Field R0 = Field::full(Q0, "Q");
  RatFun fn(const std::string& s, const FieldPtr& F, std::vector<std::string> vars = {"y"}) const {
    return parse_ratfun(s, ExprContext{F, std::move(vars), {}});
  }
  FieldElement h(long n, long d = 1) const { return H.constant(Quad(q(n, d))); }
};

PlaceValue fin(long n, long d = 1) { return PlaceValue::finite(Quad(q(n, d))); }

Poly random_poly(Gen& g, const Field& F, const std::vector<std::string>& vars, int deg) {
  Poly p(F.ambient(), vars);
  const long n = g.integer(1, 3);
  for (long i = 0; i < n; ++i) {
    Exponents e(vars.size());
    for (auto& k : e) k = static_cast<int>(g.integer(0, deg));
    p.add_term(e, random_sum(g, F, 1));
  }
  return p;
}

RatFun random_ratfun(Gen& g, const Field& F, const std::vector<std::string>& vars, int deg = 2) {
  const Poly n = random_poly(g, F, vars, deg);
  if (g.coin()) return RatFun(n);
  const Poly d = random_poly(g, F, vars, deg);
  return d.is_zero() ? RatFun(n) : RatFun(n, d);
}

}  // namespace

TEST_CASE("realizations of cuts") {
  Fix w;
  const RPlace p = place_from_cut(Cut::principal(w.H, w.h(2), Side::Upper), "y");
  const FieldElement e = p.image("y") - lift(w.h(2), p.realization_field());
  CHECK(e.sign() > 0);
  CHECK(e < lift(w.t().pow(1000), p.realization_field()));

  const Ball B0 = Ball::make(w.H, w.h(0), FinalSegment{GroupCut::above(ge({2}))});
  const RPlace b = place_from_cut(Cut::edge(B0, Side::Upper), "y");
  const FieldPtr E = b.realization_field();
  const FieldElement y = b.image("y");
  CHECK(y.sign() > 0);
  CHECK(y < lift(w.t().pow(2), E));
  CHECK(lift(FieldElement::monomial(w.Q1, ge({q(2001, 1000)})), E) < y);
  CHECK(induced_cut(b, "y").kind() == Cut::Kind::Edge);
  CHECK(cut_eq(induced_cut(b, "y"), Cut::edge(B0, Side::Upper)));

  const RPlace r = place_from_cut(Cut::filler(w.Kq, w.sqrt2(), Side::Upper), "y");
  const FieldElement d = r.image("y") - lift(w.sqrt2(), r.realization_field());
  CHECK(d.sign() > 0);
  CHECK(d < lift(FieldElement::monomial(w.K, ge({1000})), r.realization_field()));
}

TEST_CASE("evaluation and Harrison examples") {
  Fix w;
  const RPlace p = place_from_cut(Cut::principal(w.H, w.h(2), Side::Upper), "y");
  CHECK(eval_place(p, w.fn("y^2", w.Q1)) == fin(4));
  CHECK(eval_place(p, w.fn("1/(y-2)", w.Q1)).is_infinite());
  CHECK(harrison(p, w.fn("y-1", w.Q1)));
  CHECK_FALSE(harrison(p, w.fn("1/(y-2)", w.Q1)));
  CHECK_FALSE(harrison(p, w.fn("2-y", w.Q1)));

  const Ball B0 = Ball::make(w.H, w.h(0), FinalSegment{GroupCut::above(ge({2}))});
  const RatFun f = w.fn("(y^3+1)/(1-y)", w.Q1);
  CHECK(eval_place(place_from_cut(Cut::edge(B0, Side::Lower), "y"), f) == fin(1));
  CHECK(eval_place(place_from_cut(Cut::edge(B0, Side::Upper), "y"), f) == fin(1));
  // y/t^2 separates nothing here, but y/t^3 tells the ball apart from 0+.
  CHECK(eval_place(place_from_cut(Cut::edge(B0, Side::Upper), "y"), w.fn("y/t^3", w.Q1)).is_infinite());

  const RPlace r = place_from_cut(Cut::filler(w.Kq, w.sqrt2(), Side::Lower), "y");
  CHECK(eval_place(r, w.fn("y^2-2", w.K)) == fin(0));
  CHECK_FALSE(harrison(r, w.fn("y^2-2", w.K)));
  CHECK(eval_place(r, w.fn("y", w.K)) == PlaceValue::finite(Quad::sqrt_of(2)));
  // Coefficients must come from the base field.
  CHECK_THROWS(eval_place(r, w.fn("y-sqrt(2)", w.K)));

  CHECK(eval_place(place_from_cut(Cut::plus_inf(w.H), "y"), w.fn("y/(y+1)", w.Q1)) == fin(1));
  CHECK(eval_place(place_from_cut(Cut::minus_inf(w.H), "y"), w.fn("y", w.Q1)).is_infinite());
}

TEST_CASE("stacked and independent places") {
  Fix w;
  const std::vector<std::string> xy{"x", "y"};
  const FieldElement z = w.R0.constant(Quad(0));
  const RPlace sxy = stacked_place(w.R0, {{"x", z}, {"y", z}}, {"x", "y"});
  CHECK(*sxy.image("x").valuation() == ge({1, 0}));
  CHECK(*sxy.image("y").valuation() == ge({0, 1}));
  CHECK(eval_place(sxy, w.fn("x/y", w.Q0, xy)) == fin(0));
  const RPlace syx = stacked_place(w.R0, {{"x", z}, {"y", z}}, {"y", "x"});
  CHECK(eval_place(syx, w.fn("x/y", w.Q0, xy)).is_infinite());

  const FieldElement a = w.R0.constant(Quad(q(1, 3))), b = w.R0.constant(Quad(-2));
  const RPlace st = stacked_place(w.R0, {{"x", a}, {"y", b}}, {"x", "y"});
  CHECK(eval_place(st, w.fn("9/4-(x-1/3)^2-(y+2)^2", w.Q0, xy)) == fin(9, 4));
  // The section-6 function: 0 < v(x - a) < n v(y - b).
  for (int n : {1, 2, 3}) {
    const RPlace s6 = stacked_place(w.R0, {{"x", a}, {"y", b}}, {"y", "x"});
    const std::string f = "(x-1/3+(y+2)^" + std::to_string(n) + ")/(x-1/3)";
    CHECK(eval_place(s6, w.fn(f, w.Q0, xy)) == fin(1));
    const RPlace off = stacked_place(w.R0, {{"x", a}, {"y", w.R0.constant(Quad(5))}}, {"y", "x"});
    CHECK(eval_place(off, w.fn(f, w.Q0, xy)).is_infinite());
  }

  const FieldPtr Q2 = HahnField::make(2, ValueGroup::lex(0), "Q2");
  const Field R2 = Field::sub(Q2, true, CoordSubgroup{{}}, "Q");
  const FieldElement z2 = R2.constant(Quad(0));
  const RPlace ind = independent_place(R2, xy, {z2, z2}, {Quad(1), Quad::sqrt_of(2)});
  CHECK(eval_place(ind, w.fn("y^2/x", Q2, xy)) == fin(0));
  const RPlace stk = stacked_place(R2, {{"x", z2}, {"y", z2}}, {"x", "y"});
  CHECK(eval_place(stk, w.fn("y^2/x", Q2, xy)).is_infinite());
  CHECK(eval_place(ind, w.fn("x^2+3*y+7", Q2, xy)) == fin(7));
  CHECK(eval_place(stk, w.fn("x^2+3*y+7", Q2, xy)) == fin(7));
  CHECK_THROWS(independent_place(R2, xy, {z2, z2}, {Quad(1), Quad(2)}));
  CHECK_THROWS(independent_place(R2, xy, {z2, z2}, {Quad(1), Quad(-1)}));

  const RPlace rx = place_restrict(st, {"x"});
  CHECK(eval_place(rx, w.fn("x", w.Q0, {"x"})) == fin(1, 3));
  CHECK(cut_eq(induced_cut(st, "y"), Cut::principal(w.R0, b, Side::Upper)));
}

TEST_CASE("Gauss places and the constant extension") {
  Fix w;
  const RPlace xi = gauss_extension(w.H, {"y"});
  const PlaceValue v = eval_place(xi, w.fn("(1+t)*y^2+t", w.Q1));
  REQUIRE(v.kind == PlaceValue::Kind::Function);
  CHECK(v.str() == "y^2");
  CHECK(eval_place(xi, w.fn("1/(t*y)", w.Q1)).is_infinite());
  CHECK(eval_place(xi, w.fn("y", w.Q1)).str() == "y");
  CHECK(eval_place(xi, w.fn("(t^(-1)*y+1)/(t^(-1)*y^2+t)", w.Q1)).str() == "(y)/(y^2)");
  CHECK_THROWS(harrison(xi, w.fn("y", w.Q1)));

  const RPlace zeta = place_from_cut(Cut::principal(w.R0, w.R0.constant(Quad(2)), Side::Upper), "y");
  const RPlace iota = constant_ext_embed(zeta, w.H);
  CHECK(eval_place(iota, w.fn("(1+t)*y^2+t", w.Q1)) == fin(4));
  CHECK(eval_place(iota, w.fn("t*y^5", w.Q1)) == fin(0));
  CHECK(eval_place(iota, w.fn("1/(y-2)", w.Q1)).is_infinite());
  CHECK(eval_place(place_restrict(iota, {"y"}), w.fn("y", w.Q1)) == fin(2));

  // The composite is the place of the cut B_{>0}(2)+ of H: y = 2 + d with
  // t << d << 1. Compare on random functions, together with the Harrison
  // pullback.
  const Ball B = Ball::make(w.H, w.h(2), FinalSegment{GroupCut::above(ge({0}))});
  const RPlace edge = place_from_cut(Cut::edge(B, Side::Upper), "y");
  Gen g(31);
  for (int i = 0; i < 150; ++i) {
    const RatFun f = random_ratfun(g, w.H, {"y"});
    CHECK(eval_place(iota, f) == eval_place(edge, f));
    const auto gf = gauss_residue(f);
    bool pulled = false;
    if (gf) {
      const FieldPtr k = residue_field(1);
      (void)k;
      const PlaceValue outer = eval_place(iota, f);
      pulled = outer.kind == PlaceValue::Kind::Finite && outer.value.sign() > 0;
    }
    CHECK(harrison(iota, f) == pulled);
  }
}

TEST_CASE("composition with rational places") {
  Fix w;
  const RPlace K = RPlace::canonical(w.H);
  const std::vector<std::string> xs{"x"};
  const RPlace p = rational_place_compose(K, xs, {w.fn("t", w.Q1, {})});
  CHECK(eval_place(p, w.fn("x^2+1", w.Q1, xs)) == fin(1));
  CHECK(eval_place(p, w.fn("x/t", w.Q1, xs)) == fin(1));
  const RPlace p0 = rational_place_compose(K, xs, {w.fn("0", w.Q1, {})});
  CHECK(eval_place(p0, w.fn("1/x", w.Q1, xs)).is_infinite());

  // Distinct centers t and 2t: the scaled linear function separates them,
  // although x - 3t/2 has residue 0 at both.
  const RPlace p2 = rational_place_compose(K, xs, {w.fn("2*t", w.Q1, {})});
  const RatFun lin = separating_linear(w.H, xs, "x", w.t(), w.t() * w.h(2));
  CHECK(eval_place(p, lin) == fin(-1, 2));
  CHECK(eval_place(p2, lin) == fin(1, 2));
  CHECK(harrison(p, lin) != harrison(p2, lin));
  CHECK(eval_place(p, w.fn("x-3/2*t", w.Q1, xs)) == eval_place(p2, w.fn("x-3/2*t", w.Q1, xs)));

  // iota^-1(H'(f)) = H'(xi(f)) with xi: x -> a(y) over the place of a cut.
  Gen g(32);
  const std::vector<std::string> yx{"y", "x"}, ys{"y"};
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    const RPlace zeta = place_from_cut(Cut::edge(random_ball(g, w.H, false), g.coin() ? Side::Lower : Side::Upper), "y");
    const RatFun a = random_ratfun(g, w.H, ys, 1);
    const RPlace io = rational_place_compose(zeta, xs, {a});
    const RatFun f = random_ratfun(g, w.H, yx);
    const auto xf = compose(f, {{"y", RatFun::variable(w.Q1, ys, "y")}, {"x", a}}, ys);
    if (!xf) continue;
    CHECK(harrison(io, f) == harrison(zeta, *xf));
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("three case witness") {
  Fix w;
  const std::vector<std::string> xy{"x", "y"};
  const FieldElement z = w.R0.constant(Quad(0));
  const ThreeCase c2 = three_case_witness(stacked_place(w.R0, {{"x", z}, {"y", z}}, {"y", "x"}), "x", "y");
  CHECK(c2.which == 2);
  CHECK(c2.value == fin(1));
  CHECK(c2.certified);
  const ThreeCase c1 = three_case_witness(stacked_place(w.R0, {{"x", z}, {"y", z}}, {"x", "y"}), "x", "y");
  CHECK(c1.which == 1);
  CHECK(c1.certified);

  const FieldPtr Q2 = HahnField::make(2, ValueGroup::lex(0), "Q2");
  const Field R2 = Field::sub(Q2, true, CoordSubgroup{{}}, "Q");
  const FieldElement z2 = R2.constant(Quad(0));
  const ThreeCase ci = three_case_witness(independent_place(R2, xy, {z2, z2}, {Quad(1), Quad::sqrt_of(2)}), "x", "y");
  CHECK(ci.which == 2);
  CHECK(ci.value == fin(1));

  // Equal leading valuations: x = e, y = 2e + d with d much smaller.
  auto [E1, e] = adjoin_infinitesimal(w.Q0, GroupCut::plus_inf(), 1);
  auto [E2, d] = adjoin_infinitesimal(E1, GroupCut::plus_inf(), 1);
  const RPlace custom = RPlace::realized(w.R0, xy, {lift(e, E2), lift(e, E2) * FieldElement(E2, Quad(2)) + d},
                                         RPlace::Origin::Custom, "x=e y=2e+d");
  const ThreeCase c3 = three_case_witness(custom, "x", "y");
  CHECK(c3.which == 3);
  CHECK(c3.value == fin(4));
  CHECK(c3.certified);
  CHECK_THROWS(three_case_witness(stacked_place(w.R0, {{"x", z}, {"y", w.R0.constant(Quad(1))}}, {"x", "y"}), "x", "y"));
}

TEST_CASE("stacked and independent places over the same point differ") {
  Fix w;
  const std::vector<std::string> xy{"x", "y"};
  const FieldPtr Q2 = HahnField::make(2, ValueGroup::lex(0), "Q2");
  const Field R2 = Field::sub(Q2, true, CoordSubgroup{{}}, "Q");
  Gen g(33);
  for (int i = 0; i < 30; ++i) {
    const FieldElement a1 = R2.constant(Quad(g.rational())), a2 = R2.constant(Quad(g.rational()));
    const RPlace s = stacked_place(R2, {{"x", a1}, {"y", a2}}, g.coin() ? std::vector<std::string>{"x", "y"}
                                                                        : std::vector<std::string>{"y", "x"});
    const RPlace ind = independent_place(R2, xy, {a1, a2}, {Quad(1), Quad::sqrt_of(2)});
    bool found = false;
    for (const auto& f : monomial_quotient_candidates(R2, xy, {a1, a2}, 3)) {
      if (harrison(s, f) != harrison(ind, f)) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("circle function membership") {
  Fix w;
  const std::vector<std::string> xy{"x", "y"};
  const FieldPtr Q2 = HahnField::make(2, ValueGroup::lex(0), "Q2");
  const Field R2 = Field::sub(Q2, true, CoordSubgroup{{}}, "Q");
  const RatFun f = parse_ratfun("4-(x-1)^2-(y+1/2)^2", ExprContext{Q2, xy, {}});
  Gen g(34);
  int n = 0;
  for (int i = 0; i < 150; ++i) {
    const Rational p = g.rational(4, 3), r = g.rational(4, 3);
    const Rational d = (p - 1) * (p - 1) + (r + Rational(1, 2)) * (r + Rational(1, 2));
    if (d == 4) continue;
    const FieldElement a1 = R2.constant(Quad(p)), a2 = R2.constant(Quad(r));
    const RPlace s = i % 2 ? stacked_place(R2, {{"x", a1}, {"y", a2}}, {"x", "y"})
                           : independent_place(R2, xy, {a1, a2}, {Quad(1), Quad::sqrt_of(2)});
    CHECK(harrison(s, f) == (d < 4));
    ++n;
  }
  CHECK(n >= 100);
}

TEST_CASE("places of equivalent cuts agree") {
  Fix w;
  Gen g(35);
  for (int i = 0; i < 20; ++i) {
    const Ball B = random_ball(g, w.H, false);
    const RPlace lo = place_from_cut(Cut::edge(B, Side::Lower), "y");
    const RPlace hi = place_from_cut(Cut::edge(B, Side::Upper), "y");
    for (int j = 0; j < 100; ++j) {
      const RatFun f = random_ratfun(g, w.H, {"y"});
      CHECK(eval_place(lo, f) == eval_place(hi, f));
    }
  }
  const RPlace minf = place_from_cut(Cut::minus_inf(w.H), "y");
  const RPlace pinf = place_from_cut(Cut::plus_inf(w.H), "y");
  for (int j = 0; j < 100; ++j) {
    const RatFun f = random_ratfun(g, w.H, {"y"});
    CHECK(eval_place(minf, f) == eval_place(pinf, f));
  }
}

TEST_CASE("places of inequivalent cuts are separated") {
  Fix w;
  Gen g(36);
  int pairs = 0;
  for (int i = 0; i < 200 && pairs < 40; ++i) {
    auto pick = [&]() {
      const long k = g.integer(0, 7);
      if (k == 0) return Cut::plus_inf(w.H);
      if (k == 1) return Cut::principal(w.H, random_sum(g, w.H, 2), g.coin() ? Side::Lower : Side::Upper);
      return Cut::edge(random_ball(g, w.H, false), g.coin() ? Side::Lower : Side::Upper);
    };
    const Cut a = pick(), b = pick();
    if (equivalent(a, b)) continue;
    ++pairs;
    const auto s = separate(place_from_cut(a, "y"), place_from_cut(b, "y"), glue_candidates(a, b, "y"));
    CHECK_MESSAGE(s.has_value(), std::string(to_string(a) + " vs " + to_string(b)));
  }
  CHECK(pairs >= 20);
  // Non-ball cuts over Q inside Q(sqrt 2).
  const Cut r = Cut::filler(w.Kq, w.sqrt2(), Side::Lower);
  const Cut q1 = Cut::principal(w.Kq, w.Kq.constant(Quad(q(7, 5))), Side::Upper);
  CHECK(separate(place_from_cut(r, "y"), place_from_cut(q1, "y"), glue_candidates(r, q1, "y")));
}

TEST_CASE("places respect the order at principal cuts") {
  Fix w;
  Gen g(37);
  for (int i = 0; i < 150; ++i) {
    const FieldElement a = random_sum(g, w.H, 2);
    const Side side = g.coin() ? Side::Lower : Side::Upper;
    const RPlace p = place_from_cut(Cut::principal(w.H, a, side), "y");
    const RatFun f = RatFun(random_poly(g, w.H, {"y"}, 3));
    const FieldElement near = a + w.t().pow(40) * w.h(side == Side::Upper ? 1 : -1);
    const FieldElement fx = *eval_at(f, {{"y", near}}).value;
    const PlaceValue v = eval_place(p, f);
    if (fx.sign() >= 0) CHECK((v.is_infinite() || v.value.sign() >= 0));
    if (fx.sign() <= 0) CHECK((v.is_infinite() || v.value.sign() <= 0));
  }
}

TEST_CASE("evaluation is multiplicative on the valuation ring") {
  Fix w;
  Gen g(38);
  for (int i = 0; i < 150; ++i) {
    const RPlace p = place_from_cut(Cut::edge(random_ball(g, w.H, false), Side::Upper), "y");
    const RatFun f = random_ratfun(g, w.H, {"y"}), h = random_ratfun(g, w.H, {"y"});
    const PlaceValue a = eval_place(p, f), b = eval_place(p, h);
    if (a.is_infinite() || b.is_infinite()) continue;
    CHECK(eval_place(p, f + h) == PlaceValue::finite(a.value + b.value));
    CHECK(eval_place(p, f * h) == PlaceValue::finite(a.value * b.value));
  }
}
