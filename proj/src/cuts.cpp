#include "rplace/cuts.hpp"

#include <algorithm>

namespace rplace {

const char* to_string(Side s) { return s == Side::Lower ? "lower" : "upper"; }
const char* to_string(Where w) { return w == Where::Below ? "below" : "above"; }

const char* to_string(Classification::Kind k) {
  switch (k) {
    case Classification::Kind::MinusInf: return "minus-inf";
    case Classification::Kind::PlusInf: return "plus-inf";
    case Classification::Kind::Principal: return "principal";
    case Classification::Kind::BallCut: return "ball";
    case Classification::Kind::NonBall: return "non-ball";
    case Classification::Kind::Unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Construction

Cut Cut::minus_inf(Field R) {
  Cut c;
  c.kind_ = Kind::MinusInf;
  c.field_ = std::move(R);
  return c;
}

Cut Cut::plus_inf(Field R) {
  Cut c;
  c.kind_ = Kind::PlusInf;
  c.field_ = std::move(R);
  return c;
}

Cut Cut::edge(Ball B, Side s) {
  if (B.is_whole()) return s == Side::Upper ? plus_inf(B.field) : minus_inf(B.field);
  Cut c;
  c.kind_ = Kind::Edge;
  c.field_ = B.field;
  c.ball_ = std::move(B);
  c.side_ = s;
  return c;
}

Cut Cut::principal(Field R, FieldElement a, Side s) { return edge(Ball::point(std::move(R), std::move(a)), s); }

Cut Cut::filler(Field R, FieldElement g, Side s) {
  const Field Rl = R.lifted(g.field());
  if (Rl.contains(g)) {
    auto a = descend(g, R.ambient());
    if (!a) throw std::logic_error("member of a lifted field does not descend");
    return principal(std::move(R), std::move(*a), s);
  }
  Cut c;
  c.kind_ = Kind::Filler;
  c.field_ = std::move(R);
  c.g_ = std::move(g);
  c.side_ = s;
  return c;
}

namespace {

std::string paren(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') return "(" + s + ")";
  }
  return s;
}

}  // namespace

std::string to_string(const Cut& C) {
  switch (C.kind()) {
    case Cut::Kind::MinusInf: return "-inf";
    case Cut::Kind::PlusInf: return "+inf";
    case Cut::Kind::Edge:
      if (C.is_principal()) return paren(C.ball().center.str()) + (C.side() == Side::Upper ? "+" : "-");
      return "edge(" + to_string(C.ball()) + ", " + to_string(C.side()) + ")";
    case Cut::Kind::Filler:
      return "filler(" + C.filler().str() + ", " + to_string(C.side()) + ", over " + C.field().str() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Classification

namespace {

Rational pow2(unsigned k) {
  mpz_class p = 1;
  p <<= k;
  return Rational(p);
}

Rational floor_at(const Quad& c, unsigned k) {
  const Rational scale = pow2(k);
  return Rational(floor(c * Quad(scale))) / scale;
}

NonBallCertificate make_certificate(const Quad& c) {
  NonBallCertificate cert;
  const unsigned k = 4;
  cert.lo = floor_at(c, k);
  cert.hi = cert.lo + Rational(1) / pow2(k);
  for (unsigned m = k + 1;; ++m) {
    Rational f = floor_at(c, m);
    if (f > cert.lo) {
      cert.mid_lo = f;
      break;
    }
  }
  for (unsigned m = k + 1;; ++m) {
    Rational f = floor_at(c, m) + Rational(1) / pow2(m);
    if (f < cert.hi) {
      cert.mid_hi = f;
      break;
    }
  }
  return cert;
}

}  // namespace

Classification classify(const Cut& C, const ClassifyOptions& opts) {
  using K = Classification::Kind;
  Classification out;
  switch (C.kind()) {
    case Cut::Kind::MinusInf: out.kind = K::MinusInf; return out;
    case Cut::Kind::PlusInf: out.kind = K::PlusInf; return out;
    case Cut::Kind::Edge:
      out.kind = C.ball().is_singleton() ? K::Principal : K::BallCut;
      out.ball = C.ball();
      out.side = C.side();
      return out;
    case Cut::Kind::Filler: break;
  }
  const Field& R = C.field();
  const FieldElement& g = C.filler();
  const FieldPtr& E = g.field();
  const Field Rl = R.lifted(E);
  const FieldElement r0 = opts.hint ? *opts.hint : R.constant(Quad(0));
  if (!R.contains(r0)) throw std::invalid_argument("classification hint is not in " + R.str());

  ExpansionStream stream(g - lift(r0, E));
  std::vector<Term> prefix;
  auto rstar = [&]() {
    auto p = descend(FieldElement(E, HahnSum::from_terms(E->group(), prefix)), R.ambient());
    if (!p) throw std::logic_error("prefix does not descend");
    return r0 + *p;
  };

  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    out.steps = step + 1;
    auto t = stream.next();
    if (!t) {
      out.kind = K::Principal;
      out.ball = Ball::point(R, rstar());
      out.side = C.side();
      return out;
    }
    if (Rl.coords().contains(t->exp)) {
      const GroupElem own = *Rl.embedding().project(t->exp);
      if (opts.cutoff && R.value_group().cmp(own, *opts.cutoff) == Ordering::Greater) {
        out.note = "cutoff " + opts.cutoff->str() + " passed at " + own.str();
        return out;
      }
      if (Rl.admits_coeff(t->coeff)) {
        prefix.push_back(*t);
        continue;
      }
      // Coefficient outside R's coefficients at an exponent of vR.
      NonBallData nb;
      nb.rstar = rstar();
      nb.gamma0 = own;
      nb.gamma0_amb = *descend_exponent(t->exp, *E->coord_map_from(R.ambient().get()), R.ambient()->group().dim());
      nb.c = t->coeff;
      out.kind = K::NonBall;
      out.certificate = make_certificate(nb.c);
      out.nonball = std::move(nb);
      out.side = C.side();
      return out;
    }
    // Exponent outside vR: the cut is an edge of the ball of radius
    // { delta in vR : delta > gamma0 } around the prefix.
    const auto pos = Rl.embedding().position_of(t->exp);
    if (!pos.cut) {
      out.note = "value " + t->exp.str() + " sits at an irrational position of " + R.value_group().str();
      return out;
    }
    const int sign = t->coeff.sign();
    const FinalSegment S0{*pos.cut};
    const Side side = sign > 0 ? Side::Upper : Side::Lower;
    if (S0.is_all()) {
      out.kind = sign > 0 ? K::PlusInf : K::MinusInf;
      return out;
    }
    out.ball = Ball::make(R, rstar(), S0);
    out.kind = out.ball->is_singleton() ? K::Principal : K::BallCut;
    out.side = side;
    return out;
  }
  out.note = "step bound " + std::to_string(opts.max_steps) + " reached";
  return out;
}

bool verify_certificate(const Cut& C, const Classification& cl) {
  if (cl.kind != Classification::Kind::NonBall || !cl.nonball || !cl.certificate) return false;
  const auto& nb = *cl.nonball;
  const auto& ct = *cl.certificate;
  const Quad c = nb.c;
  if (!(Quad(ct.lo) < Quad(ct.mid_lo) && Quad(ct.mid_lo) < c && c < Quad(ct.mid_hi) && Quad(ct.mid_hi) < Quad(ct.hi))) {
    return false;
  }
  const Field& R = C.field();
  auto at = [&](const Rational& q) { return nb.rstar + FieldElement::monomial(R.ambient(), nb.gamma0_amb, Quad(q)); };
  // Radius {>= gamma0}: members on both sides, so the cut is interior.
  if (side_of(C, at(ct.lo)) != Where::Below || side_of(C, at(ct.hi)) != Where::Above) return false;
  // Radius {> gamma0}: each such ball on either side is separated from the
  // cut by a further element outside it.
  const FinalSegment strict{GroupCut::above(nb.gamma0)};
  const Ball lower = Ball::make(R, at(ct.lo), strict);
  const Ball upper = Ball::make(R, at(ct.hi), strict);
  if (ball_contains(lower, at(ct.mid_lo)) || side_of(C, at(ct.mid_lo)) != Where::Below) return false;
  if (ball_contains(upper, at(ct.mid_hi)) || side_of(C, at(ct.mid_hi)) != Where::Above) return false;
  return true;
}

Cut canonical(const Cut& C, std::size_t max_steps) {
  if (C.kind() != Cut::Kind::Filler || C.nonball()) return C;
  ClassifyOptions opts;
  opts.max_steps = max_steps;
  const Classification cl = classify(C, opts);
  using K = Classification::Kind;
  switch (cl.kind) {
    case K::MinusInf: return Cut::minus_inf(C.field());
    case K::PlusInf: return Cut::plus_inf(C.field());
    case K::Principal:
    case K::BallCut: return Cut::edge(*cl.ball, cl.side);
    case K::NonBall: {
      const auto& nb = *cl.nonball;
      Cut out;
      out.kind_ = Cut::Kind::Filler;
      out.field_ = C.field();
      out.g_ = nb.rstar + FieldElement::monomial(C.field().ambient(), nb.gamma0_amb, nb.c);
      out.side_ = C.side();
      out.nb_ = std::make_shared<NonBallData>(nb);
      return out;
    }
    case K::Unknown: break;
  }
  throw PrecisionError("cannot classify " + to_string(C) + ": " + cl.note);
}

// ---------------------------------------------------------------------------
// Order

Where side_of(const Cut& C, const FieldElement& x) {
  const Field& R = C.field();
  if (!R.contains(x)) throw std::invalid_argument(x.str() + " is not an element of " + R.str());
  switch (C.kind()) {
    case Cut::Kind::MinusInf: return Where::Above;
    case Cut::Kind::PlusInf: return Where::Below;
    case Cut::Kind::Edge: {
      const Ball& B = C.ball();
      if (ball_contains(B, x)) return C.side() == Side::Upper ? Where::Below : Where::Above;
      return x < B.center ? Where::Below : Where::Above;
    }
    case Cut::Kind::Filler: {
      const int s = (C.filler() - lift(x, C.filler().field())).sign();
      if (s == 0) return C.side() == Side::Upper ? Where::Below : Where::Above;
      return s > 0 ? Where::Below : Where::Above;
    }
  }
  return Where::Below;
}

namespace {

Ordering flip(Ordering o) { return static_cast<Ordering>(-static_cast<int>(o)); }

Ordering cmp_edges(const Cut& a, const Cut& b) {
  switch (relate(a.ball(), b.ball())) {
    case BallRelation::Equal:
      if (a.side() == b.side()) return Ordering::Equal;
      return a.side() == Side::Lower ? Ordering::Less : Ordering::Greater;
    case BallRelation::Disjoint: return cmp_field(a.ball().center, b.ball().center);
    case BallRelation::Inside: return b.side() == Side::Lower ? Ordering::Greater : Ordering::Less;
    case BallRelation::Contains: return a.side() == Side::Lower ? Ordering::Less : Ordering::Greater;
  }
  return Ordering::Equal;
}

// Position of a non-ball cut relative to a ball edge.
Ordering cmp_nonball_edge(const NonBallData& n, const Cut& e, std::size_t max_steps) {
  const Ball& B = e.ball();
  const Field& R = B.field;
  const ValueGroup& G = R.value_group();
  if (contains(G, B.radius, n.gamma0) && ball_contains(B, n.rstar)) {
    return e.side() == Side::Lower ? Ordering::Greater : Ordering::Less;
  }
  const FieldElement d = B.center - n.rstar;
  const auto v = R.valuation(d);
  if (v && G.cmp(*v, n.gamma0) == Ordering::Less) return d.sign() < 0 ? Ordering::Greater : Ordering::Less;
  const Quad q = coefficient_at(d, n.gamma0_amb, max_steps);
  return (q - n.c).sign() < 0 ? Ordering::Greater : Ordering::Less;
}

Ordering cmp_nonball(const NonBallData& a, const NonBallData& b, const Field& R, std::size_t max_steps) {
  const ValueGroup& G = R.value_group();
  const FieldElement d = a.rstar - b.rstar;
  const auto v = R.valuation(d);
  const Ordering og = G.cmp(a.gamma0, b.gamma0);
  const GroupElem& lo = og == Ordering::Greater ? b.gamma0 : a.gamma0;
  if (v && G.cmp(*v, lo) == Ordering::Less) return to_ordering(d.sign());
  if (og == Ordering::Equal) {
    const Quad q = coefficient_at(d, a.gamma0_amb, max_steps);
    return to_ordering((a.c + q - b.c).sign());
  }
  if (og == Ordering::Greater) {
    // a's ball sits inside b's: a sits where its gamma_b coefficient does.
    const Quad q = coefficient_at(d, b.gamma0_amb, max_steps);
    return to_ordering((q - b.c).sign());
  }
  const Quad q = coefficient_at(-d, a.gamma0_amb, max_steps);
  return flip(to_ordering((q - a.c).sign()));
}

int inf_rank(const Cut& c) {
  if (c.kind() == Cut::Kind::MinusInf) return -1;
  if (c.kind() == Cut::Kind::PlusInf) return 1;
  return 0;
}

void require_same_field(const Cut& a, const Cut& b) {
  if (!(a.field() == b.field())) {
    throw std::invalid_argument("cuts over different fields: " + a.field().str() + " vs " + b.field().str());
  }
}

}  // namespace

Ordering cut_cmp(const Cut& a0, const Cut& b0, std::size_t max_steps) {
  require_same_field(a0, b0);
  const Cut a = canonical(a0, max_steps);
  const Cut b = canonical(b0, max_steps);
  const int ra = inf_rank(a);
  const int rb = inf_rank(b);
  if (ra != 0 || rb != 0) return to_ordering(ra - rb);
  const bool ea = a.kind() == Cut::Kind::Edge;
  const bool eb = b.kind() == Cut::Kind::Edge;
  if (ea && eb) return cmp_edges(a, b);
  if (!ea && eb) return cmp_nonball_edge(*a.nonball(), b, max_steps);
  if (ea && !eb) return flip(cmp_nonball_edge(*b.nonball(), a, max_steps));
  return cmp_nonball(*a.nonball(), *b.nonball(), a.field(), max_steps);
}

bool cut_eq(const Cut& a, const Cut& b) { return cut_cmp(a, b) == Ordering::Equal; }

bool equivalent(const Cut& a0, const Cut& b0, std::size_t max_steps) {
  require_same_field(a0, b0);
  const Cut a = canonical(a0, max_steps);
  const Cut b = canonical(b0, max_steps);
  if (inf_rank(a) != 0 && inf_rank(b) != 0) return true;
  if (a.kind() == Cut::Kind::Edge && b.kind() == Cut::Kind::Edge) return ball_eq(a.ball(), b.ball());
  return cut_cmp(a, b, max_steps) == Ordering::Equal;
}

// ---------------------------------------------------------------------------
// find_between

namespace {

std::optional<FieldElement> anchor(const Cut& c) {
  if (c.kind() == Cut::Kind::Edge) return c.ball().center;
  if (c.kind() == Cut::Kind::Filler) {
    const auto& n = *c.nonball();
    return n.rstar + FieldElement::monomial(c.field().ambient(), n.gamma0_amb, Quad(Rational(floor(n.c))));
  }
  return std::nullopt;
}

// Group elements near a position, for probing around ball boundaries.
void near_position(const ValueGroup& G, const GroupCut& p, std::vector<GroupElem>& out) {
  const GroupElem base = (p.kind == GroupCut::Kind::MinusInf || p.kind == GroupCut::Kind::PlusInf) ? G.zero() : p.at;
  out.push_back(base);
  for (std::size_t j = 0; j < G.dim(); ++j) {
    for (int k : {1, -1, 2, -2}) out.push_back(base + Rational(k) * GroupElem::unit(G.dim(), j));
    for (int k : {1, -1}) out.push_back(base + Rational(k, 2) * GroupElem::unit(G.dim(), j));
  }
}

}  // namespace

FieldElement find_between(const Cut& lo0, const Cut& hi0, std::size_t max_steps) {
  if (cut_cmp(lo0, hi0, max_steps) != Ordering::Less) {
    throw std::invalid_argument("find_between needs " + to_string(lo0) + " < " + to_string(hi0));
  }
  const Cut lo = canonical(lo0, max_steps);
  const Cut hi = canonical(hi0, max_steps);
  const Field& R = lo.field();
  auto ok = [&](const FieldElement& a) {
    return R.contains(a) && side_of(lo, a) == Where::Above && side_of(hi, a) == Where::Below;
  };
  const auto al = anchor(lo);
  const auto ah = anchor(hi);
  const FieldElement one = R.constant(Quad(1));
  std::vector<FieldElement> bases;
  if (al && ah) {
    const FieldElement m = (*al + *ah) / R.constant(Quad(2));
    if (ok(m)) return m;
  } else if (al) {
    if (ok(*al + one)) return *al + one;
  } else if (ah) {
    if (ok(*ah - one)) return *ah - one;
  } else {
    return R.constant(Quad(0));
  }
  if (al) bases.push_back(*al);
  if (ah) bases.push_back(*ah);
  for (const Cut* c : {&lo, &hi}) {
    if (const NonBallData* n = c->nonball()) {
      for (unsigned k : {0u, 2u, 6u, 12u}) {
        const Rational f = floor_at(n->c, k);
        for (const Rational& q : {f, Rational(f + Rational(1) / pow2(k))}) {
          bases.push_back(n->rstar + FieldElement::monomial(R.ambient(), n->gamma0_amb, Quad(q)));
        }
      }
    }
  }
  if (bases.empty()) bases.push_back(R.constant(Quad(0)));
  for (const auto& b : bases) {
    if (ok(b)) return b;
  }
  const ValueGroup& G = R.value_group();
  std::vector<GroupElem> deltas;
  for (const Cut* c : {&lo, &hi}) {
    if (c->kind() == Cut::Kind::Edge) near_position(G, c->ball().radius.boundary, deltas);
    if (const NonBallData* n = c->nonball()) near_position(G, GroupCut::above(n->gamma0), deltas);
  }
  near_position(G, GroupCut::minus_inf(), deltas);
  for (const auto& b : bases) {
    for (const auto& d : deltas) {
      for (int s : {1, -1}) {
        const FieldElement a = b + R.monomial(d, Quad(s));
        if (ok(a)) return a;
      }
    }
  }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      const FieldElement m = (bases[i] + bases[j]) / R.constant(Quad(2));
      if (ok(m)) return m;
    }
  }
  throw std::runtime_error("no element found between " + to_string(lo) + " and " + to_string(hi));
}

// ---------------------------------------------------------------------------
// Realization, restriction, fibers

FieldElement realize(const Cut& C) {
  const Field& R = C.field();
  switch (C.kind()) {
    case Cut::Kind::MinusInf:
    case Cut::Kind::PlusInf: {
      auto [E, eps] = adjoin_infinitesimal(R.ambient(), GroupCut::plus_inf(), 1);
      const FieldElement y = eps.inverse();
      return C.kind() == Cut::Kind::PlusInf ? y : -y;
    }
    case Cut::Kind::Edge: {
      const Ball& B = C.ball();
      auto [E, eps] = adjoin_infinitesimal(R, B.radius.boundary, 1);
      const FieldElement a = lift(B.center, E);
      return C.side() == Side::Upper ? a + eps : a - eps;
    }
    case Cut::Kind::Filler: {
      auto [E, eps] = adjoin_infinitesimal(C.filler().field(), GroupCut::plus_inf(), 1);
      const FieldElement g = lift(C.filler(), E);
      return C.side() == Side::Upper ? g + eps : g - eps;
    }
  }
  throw std::logic_error("unreachable");
}

Cut restrict(const Cut& C0, const Field& R, std::size_t max_steps) {
  const Field& F = C0.field();
  if (!R.is_subfield_of(F)) throw std::invalid_argument(R.str() + " is not a subfield of " + F.str());
  const Cut C = canonical(C0, max_steps);
  switch (C.kind()) {
    case Cut::Kind::MinusInf: return Cut::minus_inf(R);
    case Cut::Kind::PlusInf: return Cut::plus_inf(R);
    case Cut::Kind::Filler: return canonical(Cut::filler(R, C.filler(), C.side()), max_steps);
    case Cut::Kind::Edge: break;
  }
  const FieldElement y = realize(C);
  ClassifyOptions opts;
  opts.max_steps = max_steps;
  if (R.contains(C.ball().center)) opts.hint = C.ball().center;
  const Cut raw = Cut::filler(R, y, C.side());
  if (raw.kind() != Cut::Kind::Filler) return raw;
  const Classification cl = classify(raw, opts);
  using K = Classification::Kind;
  switch (cl.kind) {
    case K::MinusInf: return Cut::minus_inf(R);
    case K::PlusInf: return Cut::plus_inf(R);
    case K::Principal:
    case K::BallCut: return Cut::edge(*cl.ball, cl.side);
    case K::NonBall: {
      const auto& nb = *cl.nonball;
      return canonical(Cut::filler(R, nb.rstar + FieldElement::monomial(R.ambient(), nb.gamma0_amb, nb.c), C.side()),
                       max_steps);
    }
    case K::Unknown: break;
  }
  throw PrecisionError("cannot restrict " + to_string(C) + ": " + cl.note);
}

Fiber fiber(const Cut& C0, const Field& F, std::size_t max_steps) {
  const Field& R = C0.field();
  const SubgroupEmbedding emb = R.value_embedding_into(F);
  const Cut C = canonical(C0, max_steps);
  Fiber out{Cut::minus_inf(F), Cut::plus_inf(F), false};
  const FieldElement zero = F.constant(Quad(0));
  switch (C.kind()) {
    case Cut::Kind::PlusInf: {
      const Ball hull = Ball::make(F, zero, FinalSegment{emb.inf_image(GroupCut::minus_inf())});
      out.lower = Cut::edge(hull, Side::Upper);
      out.upper = Cut::plus_inf(F);
      break;
    }
    case Cut::Kind::MinusInf: {
      const Ball hull = Ball::make(F, zero, FinalSegment{emb.inf_image(GroupCut::minus_inf())});
      out.lower = Cut::minus_inf(F);
      out.upper = Cut::edge(hull, Side::Lower);
      break;
    }
    case Cut::Kind::Edge: {
      const Ball& B0 = C.ball();
      const Ball hull = Ball::make(F, B0.center, FinalSegment{emb.inf_image(B0.radius.boundary)});
      const Ball big = Ball::make(F, B0.center, FinalSegment{emb.sup_image(B0.radius.boundary)});
      if (C.side() == Side::Upper) {
        out.lower = Cut::edge(hull, Side::Upper);
        out.upper = Cut::edge(big, Side::Upper);
      } else {
        out.lower = Cut::edge(big, Side::Lower);
        out.upper = Cut::edge(hull, Side::Lower);
      }
      break;
    }
    case Cut::Kind::Filler: {
      if (auto f = nonball_filler(C, F)) {
        const Ball B = between_ball(CutComplementSpec::of_cut(C), F, *f);
        out.lower = Cut::edge(B, Side::Lower);
        out.upper = Cut::edge(B, Side::Upper);
      } else {
        out.lower = out.upper = canonical(Cut::filler(F, C.filler(), C.side()), max_steps);
      }
      break;
    }
  }
  out.singleton = cut_cmp(out.lower, out.upper, max_steps) == Ordering::Equal;
  return out;
}

// ---------------------------------------------------------------------------
// Between-balls

namespace {

const NonBallData& require_nonball(const CutComplementSpec& spec, Cut& holder) {
  if (!spec.cut) throw std::invalid_argument("cut complement spec without a cut");
  holder = canonical(*spec.cut);
  if (!holder.nonball()) throw std::invalid_argument(to_string(*spec.cut) + " is a ball cut");
  return *holder.nonball();
}

}  // namespace

bool fills(const CutComplementSpec& spec, const FieldElement& a) {
  if (spec.kind == CutComplementSpec::Kind::BallComplement) {
    const Ball& B0 = *spec.ball;
    if (a.field() != B0.field.ambient()) throw std::invalid_argument("filler outside the ambient field");
    const auto v = (a - B0.center).valuation();
    if (!v) return true;
    const GroupCut at = B0.field.embedding().sup_image(B0.radius.boundary);
    return !is_below(a.group(), *v, at);
  }
  Cut holder;
  const NonBallData& n = require_nonball(spec, holder);
  if (a.field() != holder.field().ambient()) throw std::invalid_argument("filler outside the ambient field");
  const FieldElement d = a - n.rstar;
  const auto v = d.valuation();
  if (!v || a.group().cmp(*v, n.gamma0_amb) == Ordering::Less) return false;
  return coefficient_at(d, n.gamma0_amb) == n.c;
}

InitialSegment distance_set(const CutComplementSpec& spec) {
  if (spec.kind == CutComplementSpec::Kind::BallComplement) return distance_sets(*spec.ball);
  Cut holder;
  const NonBallData& n = require_nonball(spec, holder);
  return InitialSegment{GroupCut::above(n.gamma0)};
}

Ball between_ball(const CutComplementSpec& spec, const Field& F, const FieldElement& a) {
  const Field& R = spec.kind == CutComplementSpec::Kind::BallComplement ? spec.ball->field : spec.cut->field();
  if (!F.contains(a)) throw std::invalid_argument(a.str() + " is not an element of " + F.str());
  if (!fills(spec, a)) throw std::invalid_argument(a.str() + " does not fill the pair");
  const SubgroupEmbedding emb = R.value_embedding_into(F);
  const InitialSegment I = distance_set(spec);
  return Ball::make(F, a, segment_above(I, emb));
}

std::optional<FieldElement> nonball_filler(const Cut& C, const Field& F) {
  const Cut N = canonical(C);
  if (!N.nonball()) return std::nullopt;
  if (!F.admits_coeff(N.nonball()->c)) return std::nullopt;
  return N.filler();
}

std::vector<FullBallRow> full_ball_interval(const Ball& B, const std::vector<Ball>& samples) {
  const Cut lo = Cut::edge(B, Side::Lower);
  const Cut hi = Cut::edge(B, Side::Upper);
  std::vector<FullBallRow> rows;
  for (const Ball& B1 : samples) {
    FullBallRow row{B1, relate(B1, B), false, false, false, false, false};
    auto place = [&](const Cut& e, bool& closed, bool& open) {
      const Ordering a = cut_cmp(lo, e);
      const Ordering b = cut_cmp(e, hi);
      closed = a != Ordering::Greater && b != Ordering::Greater;
      open = a == Ordering::Less && b == Ordering::Less;
    };
    place(Cut::edge(B1, Side::Lower), row.lower_in_closed, row.lower_in_open);
    place(Cut::edge(B1, Side::Upper), row.upper_in_closed, row.upper_in_open);
    const bool joint = row.lower_in_closed == row.upper_in_closed && row.lower_in_open == row.upper_in_open;
    bool expected = false;
    switch (row.relation) {
      case BallRelation::Disjoint:
      case BallRelation::Contains: expected = !row.lower_in_closed; break;
      case BallRelation::Inside: expected = row.lower_in_open; break;
      case BallRelation::Equal: expected = row.lower_in_closed && !row.lower_in_open; break;
    }
    row.ok = joint && expected;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rplace
