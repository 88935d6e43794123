#include "rplace/serialize.hpp"

namespace rplace {

std::string valuation_text(const Field& F, const FieldElement& x) {
  const auto v = F.valuation(x);
  return v ? v->str() : "inf";
}

Json to_json(const Classification& cl) {
  Json j;
  j["kind"] = to_string(cl.kind);
  if (cl.ball) {
    j["ball"] = to_string(*cl.ball);
    j["side"] = to_string(cl.side);
  }
  if (cl.nonball) {
    j["rstar"] = cl.nonball->rstar.str();
    j["gamma0"] = cl.nonball->gamma0.str();
    j["c"] = cl.nonball->c.str();
  }
  if (cl.certificate) {
    const auto& c = *cl.certificate;
    j["certificate"] = {{"lo", to_string(c.lo)},
                        {"mid_lo", to_string(c.mid_lo)},
                        {"mid_hi", to_string(c.mid_hi)},
                        {"hi", to_string(c.hi)}};
  }
  j["steps"] = cl.steps;
  if (!cl.note.empty()) j["note"] = cl.note;
  return j;
}

Json to_json(const Fiber& f) {
  return {{"lower", to_string(f.lower)}, {"upper", to_string(f.upper)}, {"singleton", f.singleton}};
}

Json to_json(const PlaceValue& v) { return v.str(); }

Json to_json(const RPlace& p) {
  Json j;
  j["origin"] = to_string(p.origin());
  j["base"] = p.base().str();
  j["vars"] = p.vars();
  j["description"] = p.description();
  if (!p.is_gauss()) {
    Json r = Json::object();
    for (const auto& v : p.vars()) r[v] = p.image(v).str();
    j["realization"] = r;
  }
  if (p.cut()) j["cut"] = to_string(*p.cut());
  return j;
}

Json to_json(const ThreeCase& c) {
  return {{"case", c.which}, {"f", c.f.str()}, {"value", c.value.str()}, {"certified", c.certified}};
}

Json to_json(const EmbeddingContext& ctx) {
  return {{"R", ctx.R.str()},
          {"F", ctx.F.str()},
          {"convex", ctx.convex},
          {"cofinal", ctx.cofinal},
          {"embedding_exists", embedding_exists(ctx)}};
}

Json to_json(const NonConvexWitness& w, const EmbeddingContext& ctx) {
  const ValueGroup& vR = ctx.R.value_group();
  const ValueGroup& vF = ctx.F.value_group();
  Json checks = Json::object();
  for (const auto& [name, ok] : w.checks) checks[name] = ok;
  return {{"alpha", w.alpha.str()},
          {"beta", w.beta.str()},
          {"gamma", w.gamma.str()},
          {"S0", to_string(vR, w.S0)},
          {"B0", to_string(w.B0)},
          {"S", to_string(vF, w.S)},
          {"B0_plus_F", to_string(w.B0_plus_F)},
          {"BS_plus_F", to_string(w.BS_plus_F)},
          {"comparison", to_string(w.comparison)},
          {"inside", w.inside.str()},
          {"outside", w.outside.str()},
          {"between", w.between.str()},
          {"checks", checks},
          {"ok", w.ok()}};
}

Json to_json(const PrincipalPreservation& p) {
  return {{"cofinal", p.cofinal},
          {"image", to_string(p.image)},
          {"image_principal", p.image_principal},
          {"consistent", p.consistent()}};
}

}  // namespace rplace
