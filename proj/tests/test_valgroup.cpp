#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

namespace {

// Independent order oracles.
int lex_sign(const GroupElem& g) {
  for (const auto& c : g.coords) {
    if (sgn(c) != 0) return sgn(c);
  }
  return 0;
}

// Sign of x + y*sqrt(d), by squaring.
int sqrt_sign(const Rational& x, const Rational& y, long d) {
  const int sx = sgn(x);
  const int sy = sgn(y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  const Rational lhs = x * x;
  const Rational rhs = y * y * d;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sx : sy;
}

bool mask_is_suffix(const std::vector<bool>& m) {
  bool seen = false;
  for (bool b : m) {
    if (seen && !b) return false;
    seen = seen || b;
  }
  return true;
}

// Convexity by definition, searching separators among small multiples of
// unit vectors and their sums: some gamma outside with 0 < gamma < delta inside.
bool convex_by_search(const std::vector<bool>& mask) {
  const std::size_t n = mask.size();
  std::vector<GroupElem> pool;
  for (std::size_t i = 0; i < n; ++i) {
    for (long k : {1, 2}) {
      pool.push_back(Rational(k) * GroupElem::unit(n, i));
      pool.push_back(Rational(1, k) * GroupElem::unit(n, i));
      pool.push_back(Rational(-k) * GroupElem::unit(n, i));
    }
  }
  const std::size_t base = pool.size();
  for (std::size_t a = 0; a < base; ++a) {
    for (std::size_t b = 0; b < base; ++b) pool.push_back(pool[a] + pool[b]);
  }
  CoordSubgroup H{mask};
  for (const auto& gamma : pool) {
    if (H.contains(gamma) || lex_sign(gamma) <= 0) continue;
    for (const auto& delta : pool) {
      if (!H.contains(delta)) continue;
      if (lex_sign(delta - gamma) > 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("lexicographic and weighted comparison") {
  const ValueGroup L2 = ValueGroup::lex(2);
  CHECK(cmp_group(L2, ge({0, 1}), ge({1, 0})) == Ordering::Less);
  CHECK(cmp_group(L2, ge({q(3, 2), -7}), ge({q(3, 2), -7})) == Ordering::Equal);

  const ValueGroup W = ValueGroup::weighted({Quad(1), Quad::sqrt_of(2)});
  // 3 vs 2*sqrt(2)
  CHECK(sqrt_sign(3, -2, 2) > 0);
  CHECK(cmp_group(W, ge({3, 0}), ge({0, 2})) == Ordering::Greater);
  CHECK(cmp_group(W, ge({q(7, 5), 0}), ge({0, 1})) == Ordering::Less);
}

TEST_CASE("weighted groups reject dependent or non-positive weights") {
  CHECK_THROWS(ValueGroup::weighted({Quad(1), Quad(2)}));
  CHECK_THROWS(ValueGroup::weighted({Quad(1), -Quad::sqrt_of(2)}));
  CHECK_THROWS(ValueGroup::weighted({Quad::sqrt_of(2), Quad::sqrt_of(3)}));
  CHECK_NOTHROW(ValueGroup::weighted({Quad(1), Quad::sqrt_of(2)}));
}

TEST_CASE("comparison is a total order agreeing with the oracles") {
  Gen g(11);
  const ValueGroup L3 = ValueGroup::lex(3);
  const ValueGroup W = ValueGroup::weighted({Quad(1), Quad::sqrt_of(2)});
  for (int i = 0; i < 1000; ++i) {
    const GroupElem a = g.elem(3), b = g.elem(3), c = g.elem(3);
    const Ordering ab = L3.cmp(a, b);
    CHECK(static_cast<int>(ab) == lex_sign(a - b));
    CHECK(L3.cmp(b, a) == static_cast<Ordering>(-static_cast<int>(ab)));
    if (L3.less(a, b) && L3.less(b, c)) CHECK(L3.less(a, c));

    const GroupElem x = g.elem(2), y = g.elem(2), z = g.elem(2);
    const GroupElem d = x - y;
    CHECK(static_cast<int>(W.cmp(x, y)) == sqrt_sign(d.coords[0], d.coords[1], 2));
    if (W.less(x, y) && W.less(y, z)) CHECK(W.less(x, z));
    CHECK((W.cmp(x, y) == Ordering::Equal) == (x == y));
  }
}

TEST_CASE("convex coordinate subgroups") {
  const ValueGroup L2 = ValueGroup::lex(2);
  CHECK(is_convex(CoordSubgroup{{false, true}}, L2));
  CHECK_FALSE(is_convex(CoordSubgroup{{true, false}}, L2));
  CHECK(is_convex(CoordSubgroup::whole(L2), L2));
  const auto w = convexity_witness(CoordSubgroup{{true, false}}, L2);
  REQUIRE(w);
  CHECK(w->first == ge({0, 1}));
  CHECK(w->second == ge({1, 0}));
  CHECK(L2.less(L2.zero(), w->first));
  CHECK(L2.less(w->first, w->second));

  // Exactly the n+1 suffix masks are convex.
  for (std::size_t n = 1; n <= 3; ++n) {
    const ValueGroup L = ValueGroup::lex(n);
    int convex = 0;
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
      std::vector<bool> mask(n);
      for (std::size_t i = 0; i < n; ++i) mask[i] = (bits >> i) & 1u;
      const bool c = is_convex(CoordSubgroup{mask}, L);
      CHECK(c == mask_is_suffix(mask));
      CHECK(c == convex_by_search(mask));
      convex += c;
    }
    CHECK(convex == static_cast<int>(n + 1));
    CHECK(convex_subgroups(L).size() == n + 1);
  }

  // Weighted: only trivial and whole.
  const ValueGroup W = ValueGroup::weighted({Quad(1), Quad::sqrt_of(2)});
  CHECK(is_convex(CoordSubgroup{{false, false}}, W));
  CHECK(is_convex(CoordSubgroup{{true, true}}, W));
  CHECK_FALSE(is_convex(CoordSubgroup{{true, false}}, W));
  CHECK_FALSE(is_convex(CoordSubgroup{{false, true}}, W));
}

TEST_CASE("cofinal subgroups") {
  const ValueGroup L2 = ValueGroup::lex(2);
  CHECK_FALSE(is_cofinal(CoordSubgroup{{false, true}}, L2));
  CHECK(is_cofinal(CoordSubgroup{{true, false}}, L2));
  CHECK(is_cofinal(CoordSubgroup::whole(L2), L2));
  CHECK_FALSE(is_cofinal(CoordSubgroup::trivial(L2), L2));
}

TEST_CASE("segment above an initial segment") {
  const ValueGroup Q = ValueGroup::lex(1);
  const FinalSegment S = segment_above(InitialSegment{GroupCut::above(ge({0}))});
  CHECK(S.boundary == GroupCut::above(ge({0})));
  CHECK(to_string(Q, S) == "above (0)");
  CHECK(contains(Q, S, ge({q(1, 100)})));
  CHECK_FALSE(contains(Q, S, ge({0})));

  const ValueGroup L2 = ValueGroup::lex(2);
  CHECK(segment_above(InitialSegment{GroupCut::above(ge({1, 0}))}).boundary == GroupCut::above(ge({1, 0})));

  // vR = {0} x Q, S0 = {q > 2}, I = vR minus S0.
  const SubgroupEmbedding emb(L2, CoordSubgroup{{false, true}});
  const InitialSegment I{GroupCut::above(ge({2}))};
  const FinalSegment Sf = segment_above(I, emb);
  CHECK(Sf.boundary == GroupCut::above(ge({0, 2})));
  CHECK(to_string(L2, Sf) == "above (0,2)");
}

TEST_CASE("segment_above is the largest disjoint final segment (brute force)") {
  const ValueGroup L2 = ValueGroup::lex(2);
  std::vector<GroupElem> grid;
  for (long a = -2; a <= 2; ++a) {
    for (long b = -3; b <= 3; ++b) {
      grid.push_back(ge({q(a, 2), q(b)}));
    }
  }
  std::vector<GroupCut> candidates{GroupCut::minus_inf(), GroupCut::plus_inf()};
  for (const auto& g : grid) {
    candidates.push_back(GroupCut::above(g));
    candidates.push_back(GroupCut::below(g));
    candidates.push_back(canonical(L2, GroupCut::coset_upper(g, 1)));
    candidates.push_back(canonical(L2, GroupCut::coset_lower(g, 1)));
  }
  const std::vector<CoordSubgroup> subs{CoordSubgroup{{false, true}}, CoordSubgroup{{true, false}},
                                        CoordSubgroup{{true, true}}, CoordSubgroup{{false, false}}};
  for (const auto& sub : subs) {
    const SubgroupEmbedding emb(L2, sub);
    const ValueGroup& H = emb.sub();
    std::vector<GroupElem> sub_grid;
    for (const auto& g : grid) {
      if (auto p = emb.project(g)) sub_grid.push_back(*p);
    }
    std::vector<GroupCut> sub_cuts{GroupCut::minus_inf(), GroupCut::plus_inf()};
    for (const auto& h : sub_grid) {
      sub_cuts.push_back(canonical(H, GroupCut::above(h)));
      sub_cuts.push_back(canonical(H, GroupCut::below(h)));
    }
    for (const auto& p : sub_cuts) {
      const GroupCut s = emb.sup_image(p);
      // Sample of I: the grid plus points approaching the boundary.
      std::vector<GroupElem> I;
      std::vector<GroupElem> pool = sub_grid;
      for (std::size_t i = 0; i < H.dim(); ++i) {
        const GroupElem e = GroupElem::unit(H.dim(), i);
        pool.push_back(Rational(100) * e);
        pool.push_back(Rational(-100) * e);
        if (!p.at.coords.empty()) {
          for (long k = 1; k <= 64; k *= 2) {
            pool.push_back(p.at + Rational(1, k) * e);
            pool.push_back(p.at - Rational(1, k) * e);
          }
        }
      }
      if (!p.at.coords.empty()) pool.push_back(p.at);
      for (const auto& h : pool) {
        if (is_below(H, h, p)) I.push_back(h);
      }
      // Disjoint: images of I lie below s.
      for (const auto& h : I) CHECK(is_below(L2, emb.inject(h), s));
      // Largest: any lower candidate position meets the image of I.
      for (const auto& c : candidates) {
        if (cmp_cut(L2, c, s) != Ordering::Less) continue;
        bool meets = false;
        for (const auto& h : I) {
          if (!is_below(L2, emb.inject(h), c)) meets = true;
        }
        CHECK_MESSAGE(meets, to_string(L2, c) << " vs " << to_string(L2, s));
      }
    }
  }
}

TEST_CASE("positions: canonical forms and order") {
  const ValueGroup L2 = ValueGroup::lex(2);
  CHECK(canonical(L2, GroupCut::coset_upper(ge({1, 5}), 0)) == GroupCut::plus_inf());
  CHECK(canonical(L2, GroupCut::coset_lower(ge({1, 5}), 2)) == GroupCut::below(ge({1, 5})));
  CHECK(canonical(L2, GroupCut::coset_upper(ge({1, 5}), 1)) == GroupCut::coset_upper(ge({1, 0}), 1));
  const GroupCut cu = GroupCut::coset_upper(ge({0, 0}), 1);
  CHECK(cmp_cut(L2, GroupCut::above(ge({0, 100})), cu) == Ordering::Less);
  CHECK(cmp_cut(L2, cu, GroupCut::below(ge({q(1, 100), -100}))) == Ordering::Less);
  CHECK(is_below(L2, ge({0, 1000}), cu));
  CHECK_FALSE(is_below(L2, ge({q(1, 1000), -1000}), cu));
  const ValueGroup T = ValueGroup::lex(0);
  CHECK(canonical(T, GroupCut::above(T.zero())) == GroupCut::plus_inf());
}

TEST_CASE("sup and inf images of positions") {
  const ValueGroup L2 = ValueGroup::lex(2);
  const SubgroupEmbedding Rc(L2, CoordSubgroup{{false, true}});
  const SubgroupEmbedding Rn(L2, CoordSubgroup{{true, false}});
  CHECK(Rc.sup_image(GroupCut::above(ge({2}))) == GroupCut::above(ge({0, 2})));
  CHECK(Rc.inf_image(GroupCut::above(ge({2}))) == GroupCut::above(ge({0, 2})));
  CHECK(Rn.sup_image(GroupCut::above(ge({0}))) == GroupCut::above(ge({0, 0})));
  CHECK(Rn.inf_image(GroupCut::above(ge({0}))) == GroupCut::coset_upper(ge({0, 0}), 1));
  CHECK(Rc.sup_image(GroupCut::plus_inf()) == GroupCut::coset_upper(ge({0, 0}), 1));
  CHECK(Rc.inf_image(GroupCut::plus_inf()) == GroupCut::plus_inf());
  CHECK(Rc.inf_image(GroupCut::minus_inf()) == GroupCut::coset_lower(ge({0, 0}), 1));
  const auto pos = Rc.position_of(ge({1, 3}));
  CHECK_FALSE(pos.member);
  REQUIRE(pos.cut);
  CHECK(*pos.cut == GroupCut::plus_inf());
  const auto pos2 = Rn.position_of(ge({2, -1}));
  REQUIRE(pos2.cut);
  CHECK(*pos2.cut == GroupCut::below(ge({2})));
}
