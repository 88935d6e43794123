#include "rplace/embed.hpp"

#include <stdexcept>

namespace rplace {

EmbeddingContext EmbeddingContext::make(Field R, Field F) {
  if (!R.is_subfield_of(F)) throw std::invalid_argument(R.str() + " is not a subfield of " + F.str());
  EmbeddingContext c{std::move(R), std::move(F), false, false};
  const SubgroupEmbedding emb = c.value_embedding();
  c.convex = is_convex(emb.coords(), emb.super());
  c.cofinal = is_cofinal(emb.coords(), emb.super());
  return c;
}

bool embedding_exists(const EmbeddingContext& ctx) { return ctx.convex; }

Cut iota_tilde(const Cut& C0, const EmbeddingContext& ctx) {
  if (!ctx.convex) throw std::invalid_argument("no embedding: the value group of " + ctx.R.str() + " is not convex in " + ctx.F.str());
  if (!(C0.field() == ctx.R)) throw std::invalid_argument("cut is not over " + ctx.R.str());
  const Cut C = canonical(C0);
  switch (C.kind()) {
    case Cut::Kind::MinusInf: return Cut::minus_inf(ctx.F);
    case Cut::Kind::PlusInf: return Cut::plus_inf(ctx.F);
    case Cut::Kind::Edge: {
      const Ball& B0 = C.ball();
      const FinalSegment S = segment_above(complement(B0.radius), ctx.value_embedding());
      return Cut::edge(Ball::make(ctx.F, B0.center, S), C.side());
    }
    case Cut::Kind::Filler: break;
  }
  if (auto a = nonball_filler(C, ctx.F)) {
    return Cut::edge(between_ball(CutComplementSpec::of_cut(C), ctx.F, *a), Side::Lower);
  }
  return canonical(Cut::filler(ctx.F, C.filler(), Side::Lower));
}

RPlace iota_place(const RPlace& zeta, const EmbeddingContext& ctx) {
  if (!zeta.cut()) throw std::invalid_argument("the place does not come from a cut");
  if (zeta.vars().size() != 1) throw std::invalid_argument("one variable expected");
  return place_from_cut(iota_tilde(*zeta.cut(), ctx), zeta.vars().front());
}

bool NonConvexWitness::ok() const {
  for (const auto& [name, good] : checks)
    if (!good) return false;
  return true;
}

NonConvexWitness nonconvex_witness(const EmbeddingContext& ctx) {
  const SubgroupEmbedding emb = ctx.value_embedding();
  const auto w = convexity_witness(emb.coords(), emb.super());
  if (!w) throw std::invalid_argument("the value group of " + ctx.R.str() + " is convex in " + ctx.F.str());
  const ValueGroup& GF = emb.super();
  const ValueGroup& GR = emb.sub();
  NonConvexWitness out;
  out.gamma = w->first;
  out.alpha = GR.zero();
  out.beta = *emb.project(w->second);
  const auto pos = emb.position_of(out.gamma);
  if (pos.member || !pos.cut) throw std::logic_error("witness element has no describable position");
  out.S0 = FinalSegment{*pos.cut};
  const FieldElement zero = ctx.R.constant(Quad(0));
  out.B0 = Ball::make(ctx.R, zero, out.S0);
  out.S = segment_above(complement(out.S0), emb);
  const Fiber fib = fiber(Cut::edge(out.B0, Side::Upper), ctx.F);
  out.B0_plus_F = fib.lower;
  out.BS_plus_F = Cut::edge(Ball::make(ctx.F, zero, out.S), Side::Upper);
  out.comparison = cut_cmp(out.B0_plus_F, out.BS_plus_F);
  out.inside = ctx.R.monomial(out.beta, Quad(1));
  out.outside = ctx.R.monomial(out.alpha, Quad(1));
  out.between = ctx.F.monomial(out.gamma, Quad(1));

  auto& c = out.checks;
  const GroupElem a_F = emb.inject(out.alpha), b_F = emb.inject(out.beta);
  c.emplace_back("alpha < gamma < beta", GF.less(a_F, out.gamma) && GF.less(out.gamma, b_F));
  c.emplace_back("gamma not in vR", !emb.project(out.gamma).has_value());
  c.emplace_back("beta in S0", contains(GR, out.S0, out.beta));
  c.emplace_back("alpha not in S0", !contains(GR, out.S0, out.alpha));
  c.emplace_back("S0 is the set above gamma", [&] {
    for (const GroupElem& d : {out.alpha, out.beta, GroupElem(out.beta + out.beta), GroupElem(out.alpha - out.beta)}) {
      if (contains(GR, out.S0, d) != GF.less(out.gamma, emb.inject(d))) return false;
    }
    return true;
  }());
  c.emplace_back("gamma in S minus S0", contains(GF, out.S, out.gamma));
  c.emplace_back("B0 is no singleton", ball_contains(out.B0, out.inside) && !out.inside.is_zero());
  c.emplace_back("B0 is not R", !ball_contains(out.B0, out.outside));
  c.emplace_back("B0+ of F restricts to B0+", cut_eq(restrict(out.B0_plus_F, ctx.R), Cut::edge(out.B0, Side::Upper)));
  c.emplace_back("B_S(0,F)+ restricts to B0+", cut_eq(restrict(out.BS_plus_F, ctx.R), Cut::edge(out.B0, Side::Upper)));
  c.emplace_back("B0+_F < B_S(0,F)+", out.comparison == Ordering::Less);
  c.emplace_back("u above B0+_F", side_of(out.B0_plus_F, out.between) == Where::Above);
  c.emplace_back("u below B_S(0,F)+", side_of(out.BS_plus_F, out.between) == Where::Below);
  return out;
}

PrincipalPreservation principal_preservation(const EmbeddingContext& ctx) {
  PrincipalPreservation p;
  p.cofinal = ctx.cofinal;
  p.image = iota_tilde(Cut::principal(ctx.R, ctx.R.constant(Quad(0)), Side::Upper), ctx);
  p.image_principal = p.image.is_principal();
  return p;
}

}  // namespace rplace
