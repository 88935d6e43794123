#include "rplace/places.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace rplace {

std::string PlaceValue::str() const {
  switch (kind) {
    case Kind::Finite: return value.str();
    case Kind::Infinite: return "inf";
    case Kind::Function: return function->str();
  }
  return "";
}

bool operator==(const PlaceValue& a, const PlaceValue& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PlaceValue::Kind::Finite: return a.value == b.value;
    case PlaceValue::Kind::Infinite: return true;
    case PlaceValue::Kind::Function:
      return a.function->field() == b.function->field() && a.function->vars() == b.function->vars() &&
             *a.function == *b.function;
  }
  return false;
}

const char* to_string(RPlace::Origin o) {
  switch (o) {
    case RPlace::Origin::FromCut: return "from-cut";
    case RPlace::Origin::Stacked: return "stacked";
    case RPlace::Origin::Independent: return "independent";
    case RPlace::Origin::Composed: return "composed";
    case RPlace::Origin::Gauss: return "gauss";
    case RPlace::Origin::Custom: return "custom";
  }
  return "";
}

FieldPtr residue_field(std::int64_t d) {
  static std::mutex mu;
  static std::map<std::int64_t, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& F = cache[d];
  if (!F) F = HahnField::make(d, ValueGroup::lex(0), d == 1 ? "Q" : "Q(sqrt(" + std::to_string(d) + "))");
  return F;
}

RPlace RPlace::realized(Field base, std::vector<std::string> vars, std::vector<FieldElement> values, Origin origin,
                        std::string description) {
  if (vars.size() != values.size()) throw std::invalid_argument("one value per variable is required");
  RPlace p;
  p.E_ = values.empty() ? base.ambient() : values.front().field();
  for (auto& v : values) v = lift(v, p.E_);
  p.base_ = std::move(base);
  if (!p.E_->coord_map_from(p.base_.ambient().get())) {
    throw std::invalid_argument("realization field does not extend " + p.base_.str());
  }
  p.vars_ = std::move(vars);
  p.values_ = std::move(values);
  p.origin_ = origin;
  p.description_ = std::move(description);
  return p;
}

RPlace RPlace::canonical(Field base) {
  const std::string d = "residue place of " + base.str();
  return realized(std::move(base), {}, {}, Origin::Custom, d);
}

std::map<std::string, FieldElement> RPlace::assignment() const {
  std::map<std::string, FieldElement> m;
  for (std::size_t i = 0; i < vars_.size(); ++i) m.emplace(vars_[i], values_[i]);
  return m;
}

const FieldElement& RPlace::image(const std::string& var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == var) return values_[i];
  throw std::invalid_argument("place has no variable " + var);
}

// ---------------------------------------------------------------------------
// Constructions

RPlace place_from_cut(const Cut& C, const std::string& var) {
  RPlace p = RPlace::realized(C.field(), {var}, {realize(C)}, RPlace::Origin::FromCut, "from-cut " + to_string(C));
  p.cut_ = C;
  return p;
}

RPlace stacked_place(const Field& base, const std::map<std::string, FieldElement>& at,
                     const std::vector<std::string>& order) {
  if (order.size() != at.size()) throw std::invalid_argument("the order must list every variable once");
  FieldPtr E = base.ambient();
  std::vector<FieldElement> eps(order.size());
  for (std::size_t k = order.size(); k-- > 0;) {
    auto [E2, e] = adjoin_infinitesimal(E, GroupCut::plus_inf(), 1);
    for (std::size_t j = k + 1; j < order.size(); ++j) eps[j] = lift(eps[j], E2);
    eps[k] = e;
    E = E2;
  }
  std::vector<FieldElement> values;
  std::string desc = "stacked";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto it = at.find(order[i]);
    if (it == at.end()) throw std::invalid_argument("no value for " + order[i]);
    if (!base.contains(it->second)) throw std::invalid_argument(it->second.str() + " is not in " + base.str());
    values.push_back(lift(it->second, E) + lift(eps[i], E));
    desc += " " + order[i] + "=" + it->second.str();
  }
  return RPlace::realized(base, order, std::move(values), RPlace::Origin::Stacked, desc);
}

RPlace independent_place(const Field& base, const std::vector<std::string>& vars, const std::vector<FieldElement>& at,
                         const std::vector<Quad>& weights) {
  if (vars.size() != at.size() || vars.size() != weights.size()) {
    throw std::invalid_argument("one value and one weight per variable are required");
  }
  for (const auto& w : weights)
    if (w.sign() <= 0) throw std::invalid_argument("weights must be positive");
  auto [E, eps] = adjoin_weighted_block(base.ambient(), weights);
  std::vector<FieldElement> values;
  std::string desc = "independent";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!base.contains(at[i])) throw std::invalid_argument(at[i].str() + " is not in " + base.str());
    values.push_back(lift(at[i], E) + eps[i]);
    desc += " " + vars[i] + "=" + at[i].str() + ":" + weights[i].str();
  }
  return RPlace::realized(base, vars, std::move(values), RPlace::Origin::Independent, desc);
}

RPlace gauss_extension(const Field& F, std::vector<std::string> vars) {
  RPlace p;
  p.base_ = F;
  p.vars_ = std::move(vars);
  p.origin_ = RPlace::Origin::Gauss;
  p.description_ = "gauss over " + F.str();
  p.E_ = F.ambient();
  return p;
}

RPlace constant_ext_embed(const RPlace& zeta, const Field& F) {
  if (zeta.is_gauss()) throw std::invalid_argument("the inner place must be realized");
  if (zeta.base().value_group().dim() != 0) {
    throw std::invalid_argument(zeta.base().str() + " is not a residue field (nontrivial value group)");
  }
  const std::int64_t d = zeta.base().ambient()->coeff_radicand();
  if (d != 1 && d != F.ambient()->coeff_radicand()) throw std::invalid_argument("coefficient fields do not match");
  RPlace p = gauss_extension(F, zeta.vars());
  p.outer_ = std::make_shared<RPlace>(zeta);
  p.description_ = "(" + zeta.description() + ") after gauss over " + F.str();
  return p;
}

RPlace rational_place_compose(const RPlace& zeta, const std::vector<std::string>& xs,
                              const std::vector<RatFun>& images) {
  if (zeta.is_gauss()) throw std::invalid_argument("the inner place must be realized");
  if (xs.size() != images.size()) throw std::invalid_argument("one image per variable is required");
  const auto at = zeta.assignment();
  std::vector<FieldElement> centers;
  for (const auto& a : images) {
    if (a.field() != zeta.base().ambient()) throw std::invalid_argument("image over a different field");
    const EvalResult r = eval_at(a, at);
    if (r.pole()) throw std::domain_error("image " + a.str() + " has a pole at the realization");
    centers.push_back(*r.value);
  }
  FieldPtr E = zeta.realization_field();
  std::vector<FieldElement> eps(xs.size());
  for (std::size_t k = xs.size(); k-- > 0;) {
    auto [E2, e] = adjoin_infinitesimal(E, GroupCut::plus_inf(), 1);
    for (std::size_t j = k + 1; j < xs.size(); ++j) eps[j] = lift(eps[j], E2);
    eps[k] = e;
    E = E2;
  }
  std::vector<std::string> vars = zeta.vars();
  std::vector<FieldElement> values;
  for (const auto& v : zeta.realization()) values.push_back(lift(v, E));
  std::string desc = "(" + zeta.description() + ") after";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::find(vars.begin(), vars.end(), xs[i]) != vars.end()) throw std::invalid_argument("variable reused");
    vars.push_back(xs[i]);
    values.push_back(lift(centers[i], E) + eps[i]);
    desc += " " + xs[i] + "->" + images[i].str();
  }
  return RPlace::realized(zeta.base(), std::move(vars), std::move(values), RPlace::Origin::Composed, desc);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

void require_over_base(const RPlace& zeta, const RatFun& f) {
  if (f.field() != zeta.base().ambient()) throw std::invalid_argument("function is not over " + zeta.base().str());
  for (const auto& v : f.vars())
    if (std::find(zeta.vars().begin(), zeta.vars().end(), v) == zeta.vars().end())
      throw std::invalid_argument("place has no variable " + v);
  for (const Poly* p : {&f.num(), &f.den()})
    for (const auto& [e, c] : p->terms())
      if (!zeta.base().contains(c)) throw std::invalid_argument("coefficient " + c.str() + " is not in " + zeta.base().str());
}

std::optional<GroupElem> min_valuation(const Poly& p) {
  const ValueGroup& G = p.field()->group();
  std::optional<GroupElem> m;
  for (const auto& [e, c] : p.terms()) {
    const GroupElem v = *c.valuation();
    if (!m || G.less(v, *m)) m = v;
  }
  return m;
}

Poly residue_poly(const Poly& p, const GroupElem& m, const FieldPtr& k) {
  Poly out(k, p.vars());
  const FieldElement shift = FieldElement::monomial(p.field(), -m);
  for (const auto& [e, c] : p.terms()) {
    const auto r = residue(c * shift);
    out.add_term(e, FieldElement(k, *r));
  }
  return out;
}

// Constant coefficients of a residue function, moved into another field.
Poly move_constants(const Poly& p, const FieldPtr& target) {
  Poly out(target, p.vars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, FieldElement(target, *residue(c)));
  return out;
}

}  // namespace

std::optional<RatFun> gauss_residue(const RatFun& f) {
  const FieldPtr k = residue_field(f.field()->coeff_radicand());
  if (f.is_zero()) return RatFun::constant(k, f.vars(), FieldElement(k, Quad(0)));
  const GroupElem mn = *min_valuation(f.num());
  const GroupElem md = *min_valuation(f.den());
  const Ordering o = f.field()->group().cmp(mn, md);
  if (o == Ordering::Less) return std::nullopt;
  if (o == Ordering::Greater) return RatFun::constant(k, f.vars(), FieldElement(k, Quad(0)));
  return RatFun(residue_poly(f.num(), mn, k), residue_poly(f.den(), md, k));
}

PlaceValue eval_place(const RPlace& zeta, const RatFun& f) {
  require_over_base(zeta, f);
  if (zeta.is_gauss()) {
    const auto g = gauss_residue(f);
    if (!g) return PlaceValue::infinite();
    if (!zeta.outer()) return PlaceValue::of_function(*g);
    const RPlace& outer = *zeta.outer();
    const FieldPtr target = outer.base().ambient();
    return eval_place(outer, RatFun(move_constants(g->num(), target), move_constants(g->den(), target)));
  }
  const auto at = zeta.assignment();
  const EvalResult r = eval_at(f, at);
  if (r.pole()) {
    if (eval_poly(f.num(), at).is_zero()) throw std::domain_error("0/0 at the realization of " + zeta.description());
    return PlaceValue::infinite();
  }
  const auto q = residue(*r.value);
  return q ? PlaceValue::finite(*q) : PlaceValue::infinite();
}

bool harrison(const RPlace& zeta, const RatFun& f) {
  if (zeta.is_gauss() && !zeta.outer()) throw std::invalid_argument("Gauss places take values in a function field");
  const PlaceValue v = eval_place(zeta, f);
  return v.kind == PlaceValue::Kind::Finite && v.value.sign() > 0;
}

RPlace place_restrict(const RPlace& zeta, const std::vector<std::string>& vars) {
  if (zeta.is_gauss()) {
    if (zeta.outer()) return constant_ext_embed(place_restrict(*zeta.outer(), vars), zeta.base());
    return gauss_extension(zeta.base(), vars);
  }
  std::vector<FieldElement> values;
  for (const auto& v : vars) values.push_back(zeta.image(v));
  std::string desc = "restriction of (" + zeta.description() + ") to";
  for (const auto& v : vars) desc += " " + v;
  RPlace p = RPlace::realized(zeta.base(), vars, std::move(values), zeta.origin(), desc);
  return p;
}

Cut induced_cut(const RPlace& zeta, const std::string& var) {
  if (zeta.is_gauss()) throw std::invalid_argument("Gauss places have no realization");
  return canonical(Cut::filler(zeta.base(), zeta.image(var), Side::Upper));
}

// ---------------------------------------------------------------------------
// Witnesses

ThreeCase three_case_witness(const RPlace& zeta, const std::string& x, const std::string& y) {
  const FieldPtr A = zeta.base().ambient();
  const RatFun X = RatFun::variable(A, zeta.vars(), x);
  const RatFun Y = RatFun::variable(A, zeta.vars(), y);
  const PlaceValue zero = PlaceValue::finite(Quad(0));
  if (!(eval_place(zeta, X) == zero) || !(eval_place(zeta, Y) == zero)) {
    throw std::invalid_argument("the place must send both variables to 0");
  }
  const RatFun one = RatFun::constant(A, zeta.vars(), FieldElement(A, Quad(1)));
  ThreeCase out;
  if (eval_place(zeta, X / Y) == zero) {
    out.which = 1;
    out.f = one + X / Y;
  } else if (eval_place(zeta, Y / X) == zero) {
    out.which = 2;
    out.f = one + Y / X;
  } else {
    out.which = 3;
    out.f = (Y * Y) / (X * X);
  }
  out.value = eval_place(zeta, out.f);
  out.certified = out.value.kind == PlaceValue::Kind::Finite && out.value.value.sign() > 0;
  return out;
}

std::optional<Separation> separate(const RPlace& a, const RPlace& b, const std::vector<RatFun>& candidates) {
  for (const auto& f : candidates) {
    PlaceValue va = eval_place(a, f), vb = eval_place(b, f);
    if (!(va == vb)) return Separation{f, std::move(va), std::move(vb)};
  }
  return std::nullopt;
}

namespace {

void anchors_of(const Cut& C, std::vector<FieldElement>& cs, std::vector<GroupElem>& ds) {
  const ValueGroup& G = C.field().ambient()->group();
  auto near = [&](const GroupElem& g) {
    ds.push_back(g);
    for (std::size_t i = 0; i < G.dim(); ++i) {
      for (int s : {-1, 1}) {
        GroupElem e = g;
        e.coords[i] += s;
        ds.push_back(e);
      }
    }
  };
  const Cut N = canonical(C);
  if (N.kind() == Cut::Kind::Edge) {
    cs.push_back(N.ball().center);
    const GroupCut p = C.field().embedding().sup_image(N.ball().radius.boundary);
    if (p.kind != GroupCut::Kind::MinusInf && p.kind != GroupCut::Kind::PlusInf) near(p.at);
  } else if (const NonBallData* n = N.nonball()) {
    cs.push_back(n->rstar);
    near(n->gamma0_amb);
  }
}

}  // namespace

std::vector<RatFun> glue_candidates(const Cut& a, const Cut& b, const std::string& var) {
  const Field& R = a.field();
  const FieldPtr A = R.ambient();
  const std::vector<std::string> vars{var};
  std::vector<FieldElement> cs{R.constant(Quad(0))};
  std::vector<GroupElem> ds{A->group().zero()};
  anchors_of(a, cs, ds);
  anchors_of(b, cs, ds);
  const Ordering o = cut_cmp(a, b);
  if (o != Ordering::Equal) cs.push_back(o == Ordering::Less ? find_between(a, b) : find_between(b, a));
  // Scales at which the anchors differ.
  const std::size_t n_anchor = cs.size();
  for (std::size_t i = 0; i < n_anchor; ++i) {
    for (std::size_t j = i + 1; j < n_anchor; ++j) {
      if (auto v = (cs[i] - cs[j]).valuation()) {
        ds.push_back(*v);
        for (std::size_t k = 0; k < v->dim(); ++k) {
          for (int s : {-1, 1}) {
            GroupElem e = *v;
            e.coords[k] += s;
            ds.push_back(e);
          }
        }
      }
    }
  }
  const RatFun Y = RatFun::variable(A, vars, var);
  std::vector<RatFun> out;
  for (const auto& c : cs) {
    const RatFun d = Y - RatFun::constant(A, vars, c);
    out.push_back(d);
    out.push_back(d.inverse());
  }
  for (const auto& c : cs) {
    const RatFun d = Y - RatFun::constant(A, vars, c);
    for (const auto& g : ds) {
      const FieldElement m = FieldElement::monomial(A, g);
      if (!R.contains(m)) continue;
      const RatFun M = RatFun::constant(A, vars, m);
      out.push_back(d / M);
      out.push_back(M / d);
    }
  }
  return out;
}

std::vector<RatFun> monomial_quotient_candidates(const Field& base, const std::vector<std::string>& vars,
                                                 const std::vector<FieldElement>& at, int k) {
  const FieldPtr A = base.ambient();
  const std::size_t n = vars.size();
  std::vector<std::vector<int>> exps;
  std::vector<int> e(n, -k);
  for (;;) {
    if (std::any_of(e.begin(), e.end(), [](int x) { return x != 0; })) exps.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == k) e[i++] = -k;
    if (i == n) break;
    ++e[i];
  }
  auto weight = [](const std::vector<int>& x) {
    int s = 0;
    for (int v : x) s += std::abs(v);
    return s;
  };
  std::stable_sort(exps.begin(), exps.end(), [&](const auto& p, const auto& q) { return weight(p) < weight(q); });
  const RatFun one = RatFun::constant(A, vars, FieldElement(A, Quad(1)));
  std::vector<RatFun> out;
  for (const auto& x : exps) {
    RatFun m = one;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      m = m * (RatFun::variable(A, vars, vars[i]) - RatFun::constant(A, vars, at[i])).pow(x[i]);
    }
    out.push_back(one + m);
  }
  return out;
}

RatFun separating_linear(const Field& base, const std::vector<std::string>& vars, const std::string& x,
                         const FieldElement& a, const FieldElement& b) {
  if (a == b) throw std::invalid_argument("points coincide");
  const FieldPtr A = base.ambient();
  const FieldElement mid = (a + b) / FieldElement(A, Quad(2));
  return (RatFun::variable(A, vars, x) - RatFun::constant(A, vars, mid)) / RatFun::constant(A, vars, b - a);
}

}  // namespace rplace
