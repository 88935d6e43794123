#include "rplace/probes.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "rplace/sampling.hpp"

namespace rplace {
namespace {

const std::vector<std::string> kXY{"x", "y"};

// Q as a view of the rank zero field Q(sqrt 2), so weights in Q(sqrt 2)
// may be used for independent places.
struct PointBase {
  FieldPtr Q2 = HahnField::make(2, ValueGroup::lex(0), "Q(sqrt(2))");
  Field R = Field::sub(Q2, true, CoordSubgroup{{}}, "Q");
  FieldElement c(const Rational& q) const { return R.constant(Quad(q)); }
  RatFun var(const std::string& v) const { return RatFun::variable(Q2, kXY, v); }
  RatFun con(const Rational& q) const { return RatFun::constant(Q2, kXY, c(q)); }
};

std::vector<std::string> random_order(Sampler& s) {
  return s.coin() ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"y", "x"};
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ",") + x;
  return out;
}

Json finish(Json j, const Json& failures) {
  j["failures"] = failures;
  j["ok"] = failures.empty();
  return j;
}

// 0 < v(x - a) < n v(y - b) forces (x - a + (y - b)^n)/(x - a) to 1; a
// y-residue other than b sends it to infinity.
Json power_quotient(Sampler& s) {
  PointBase P;
  const std::vector<Quad> w{Quad(1), Quad::sqrt_of(2)};
  int one = 0, off_inf = 0, reversed_inf = 0;
  const int trials = 40;
  Json failures = Json::array(), examples = Json::array();
  for (int i = 0; i < trials; ++i) {
    const Rational a = s.rational(), b = s.rational();
    const long n = s.integer(1, 4);
    const Rational b2 = b + s.nonzero_rational();
    const RatFun dx = P.var("x") - P.con(a);
    const RatFun f = (dx + (P.var("y") - P.con(b)).pow(n)) / dx;

    const PlaceValue st = eval_place(stacked_place(P.R, {{"x", P.c(a)}, {"y", P.c(b)}}, {"y", "x"}), f);
    const PlaceValue ind = eval_place(independent_place(P.R, kXY, {P.c(a), P.c(b)}, w), f);
    const auto order = random_order(s);
    const PlaceValue off_st = eval_place(stacked_place(P.R, {{"x", P.c(a)}, {"y", P.c(b2)}}, order), f);
    const PlaceValue off_ind = eval_place(independent_place(P.R, kXY, {P.c(a), P.c(b2)}, w), f);
    const PlaceValue rev = eval_place(stacked_place(P.R, {{"x", P.c(a)}, {"y", P.c(b)}}, {"x", "y"}), f);

    const PlaceValue unit = PlaceValue::finite(Quad(1));
    const bool ok_one = st == unit && ind == unit;
    const bool ok_off = off_st.is_infinite() && off_ind.is_infinite();
    one += ok_one;
    off_inf += ok_off;
    reversed_inf += rev.is_infinite();
    if (!ok_one || !ok_off || !rev.is_infinite())
      failures.push_back({{"f", f.str()}, {"stacked", st.str()}, {"independent", ind.str()},
                          {"off_stacked", off_st.str()}, {"off_independent", off_ind.str()},
                          {"reversed", rev.str()}});
    if (i < 3)
      examples.push_back({{"a", to_string(a)}, {"b", to_string(b)}, {"n", n}, {"f", f.str()},
                          {"stacked", st.str()}, {"independent", ind.str()}, {"off_b", to_string(b2)},
                          {"off_stacked", off_st.str()}, {"off_independent", off_ind.str()},
                          {"reversed_order", rev.str()}});
  }
  return finish({{"trials", trials}, {"value_one", one}, {"off_residue_infinite", off_inf},
                 {"reversed_order_infinite", reversed_inf}, {"examples", examples}},
                failures);
}

// A stacked and an independent place over the same point, told apart by a
// monomial quotient lying in the Harrison set of exactly one of them.
Json stacked_independent(Sampler& s) {
  PointBase P;
  const std::vector<Quad> w{Quad(1), Quad::sqrt_of(2)};
  const int trials = 40;
  int found = 0;
  Json failures = Json::array(), examples = Json::array();
  for (int i = 0; i < trials; ++i) {
    const Rational a1 = s.rational(), a2 = s.rational();
    const auto order = random_order(s);
    const RPlace st = stacked_place(P.R, {{"x", P.c(a1)}, {"y", P.c(a2)}}, order);
    const RPlace ind = independent_place(P.R, kXY, {P.c(a1), P.c(a2)}, w);
    std::optional<RatFun> hit;
    for (const auto& f : monomial_quotient_candidates(P.R, kXY, {P.c(a1), P.c(a2)}, 3)) {
      if (harrison(st, f) != harrison(ind, f)) {
        hit = f;
        break;
      }
    }
    const Json point = {{"a1", to_string(a1)}, {"a2", to_string(a2)}, {"order", join(order)}};
    if (!hit) {
      failures.push_back(point);
      continue;
    }
    ++found;
    if (examples.size() < 4) {
      Json e = point;
      e["f"] = hit->str();
      e["stacked"] = eval_place(st, *hit).str();
      e["independent"] = eval_place(ind, *hit).str();
      e["stacked_in_harrison"] = harrison(st, *hit);
      e["independent_in_harrison"] = harrison(ind, *hit);
      examples.push_back(e);
    }
  }
  return finish({{"trials", trials}, {"separated", found}, {"examples", examples}}, failures);
}

// Places with x and y both going to 0: one of 1 + x/y, 1 + y/x, y^2/x^2 has
// a finite positive value.
Json three_case(Sampler& s) {
  PointBase P;
  const FieldElement z = P.c(0);
  std::vector<std::pair<std::string, RPlace>> places;
  for (const auto& order : {std::vector<std::string>{"x", "y"}, std::vector<std::string>{"y", "x"}})
    places.emplace_back("stacked " + join(order), stacked_place(P.R, {{"x", z}, {"y", z}}, order));
  for (int i = 0; i < 12; ++i) {
    const Rational p = s.integer(1, 5), q = s.integer(1, 5);
    const std::vector<Quad> w{Quad(p), Quad(q) * Quad::sqrt_of(2)};
    const bool swap = s.coin();
    const std::vector<Quad> ws = swap ? std::vector<Quad>{w[1], w[0]} : w;
    places.emplace_back("independent weights " + ws[0].str() + "," + ws[1].str(),
                        independent_place(P.R, kXY, {z, z}, ws));
  }
  // Equal leading valuations: x = e, y = c*e + d with d much smaller.
  auto [E1, e] = adjoin_infinitesimal(P.Q2, GroupCut::plus_inf(), 1);
  auto [E2, d] = adjoin_infinitesimal(E1, GroupCut::plus_inf(), 1);
  for (int i = 0; i < 12; ++i) {
    const Rational c = s.nonzero_rational(4, 3);
    const FieldElement x = lift(e, E2);
    const FieldElement y = x * FieldElement(E2, Quad(c)) + d;
    places.emplace_back("x=e y=" + to_string(c) + "*e+d",
                        RPlace::realized(P.R, kXY, {x, y}, RPlace::Origin::Custom, "x=e y=" + to_string(c) + "*e+d"));
  }

  std::map<int, int> by_case;
  Json failures = Json::array(), results = Json::array();
  for (const auto& [label, zeta] : places) {
    const ThreeCase tc = three_case_witness(zeta, "x", "y");
    const bool ok = tc.certified && harrison(zeta, tc.f) && eval_place(zeta, tc.f) == tc.value;
    ++by_case[tc.which];
    Json r = {{"place", label}};
    r.update(to_json(tc));
    if (!ok) failures.push_back(r);
    results.push_back(r);
  }
  Json counts = Json::object();
  for (const auto& [k, n] : by_case) counts[std::to_string(k)] = n;
  return finish({{"places", places.size()}, {"cases", counts}, {"all_cases_seen", by_case.size() == 3},
                 {"results", results}},
                failures);
}

// Membership of f = r^2 - (x - a)^2 - (y - b)^2 in the Harrison set of a
// place centered at (p, q) is the interior predicate.
Json circle(Sampler& s) {
  PointBase P;
  const Rational a = s.rational(3, 2), b = s.rational(3, 2);
  Rational r2 = s.integer(1, 9);
  r2 /= s.integer(1, 2);
  r2.canonicalize();
  const RatFun dx = P.var("x") - P.con(a), dy = P.var("y") - P.con(b);
  const RatFun f = P.con(r2) - dx * dx - dy * dy;
  const int trials = 150;
  int agree = 0, inside = 0, on = 0;
  Json failures = Json::array();
  for (int i = 0; i < trials; ++i) {
    const Rational p = s.rational(4, 3), q = s.rational(4, 3);
    const Rational dist = (p - a) * (p - a) + (q - b) * (q - b);
    RPlace zeta = i % 2 ? stacked_place(P.R, {{"x", P.c(p)}, {"y", P.c(q)}}, random_order(s))
                        : independent_place(P.R, kXY, {P.c(p), P.c(q)}, {Quad(1), Quad::sqrt_of(2)});
    const bool interior = dist < r2;
    inside += interior;
    on += dist == r2;
    if (harrison(zeta, f) == interior)
      ++agree;
    else
      failures.push_back({{"p", to_string(p)}, {"q", to_string(q)}, {"value", eval_place(zeta, f).str()}});
  }
  return finish({{"f", f.str()}, {"trials", trials}, {"agree", agree}, {"interior", inside}, {"on_circle", on}},
                failures);
}

// For xi: x -> a(y) composed after the place of a cut, f is in the Harrison
// set of the composite iff f(y, a(y)) is in that of the cut place.
Json compose_probe(Sampler& s) {
  const FieldPtr Q1 = HahnField::make(1, ValueGroup::lex(1), "H");
  const Field H = Field::full(Q1, "H");
  const std::vector<std::string> xs{"x"}, ys{"y"}, yx{"y", "x"};
  const int trials = 150;
  int checked = 0, agree = 0, poles = 0;
  Json failures = Json::array(), examples = Json::array();
  for (int i = 0; i < trials; ++i) {
    const Ball B = s.ball(H, false);
    const Side side = s.coin() ? Side::Lower : Side::Upper;
    const RPlace zeta = place_from_cut(Cut::edge(B, side), "y");
    const RatFun a = s.ratfun(H, ys, 1);
    const RatFun f = s.ratfun(H, yx);
    const RPlace io = rational_place_compose(zeta, xs, {a});
    const auto pulled = compose(f, {{"y", RatFun::variable(Q1, ys, "y")}, {"x", a}}, ys);
    if (!pulled) {
      ++poles;
      continue;
    }
    ++checked;
    const bool lhs = harrison(io, f), rhs = harrison(zeta, *pulled);
    const Json rec = {{"cut", to_string(Cut::edge(B, side))}, {"a", a.str()}, {"f", f.str()},
                      {"composite", eval_place(io, f).str()}, {"pulled_back", eval_place(zeta, *pulled).str()},
                      {"in_harrison", lhs}};
    if (lhs == rhs)
      ++agree;
    else
      failures.push_back(rec);
    if (examples.size() < 3) examples.push_back(rec);
  }
  return finish({{"trials", trials}, {"checked", checked}, {"agree", agree}, {"skipped_poles", poles},
                 {"examples", examples}},
                failures);
}

// Rational places at distinct points are separated by a scaled linear
// function taking the values -1/2 and 1/2.
Json linear_separation(Sampler& s) {
  const FieldPtr Q1 = HahnField::make(1, ValueGroup::lex(1), "H");
  const Field H = Field::full(Q1, "H");
  const RPlace K = RPlace::canonical(H);
  const int trials = 40;
  int separated = 0;
  Json failures = Json::array(), examples = Json::array();
  const PlaceValue lo = PlaceValue::finite(Quad(Rational(-1, 2))), hi = PlaceValue::finite(Quad(Rational(1, 2)));
  for (int i = 0; i < trials; ++i) {
    std::vector<FieldElement> a{s.sum(H, 2), s.sum(H, 2)}, b{s.sum(H, 2), s.sum(H, 2)};
    if (s.coin()) b[0] = a[0];
    if (a == b) b[1] += H.constant(Quad(1));
    const std::string x = a[0] == b[0] ? "y" : "x";
    const std::size_t k = x == "x" ? 0 : 1;
    const auto images = [&](const std::vector<FieldElement>& p) {
      return std::vector<RatFun>{RatFun::constant(Q1, {}, p[0]), RatFun::constant(Q1, {}, p[1])};
    };
    const RPlace pa = rational_place_compose(K, kXY, images(a));
    const RPlace pb = rational_place_compose(K, kXY, images(b));
    const RatFun f = separating_linear(H, kXY, x, a[k], b[k]);
    const PlaceValue va = eval_place(pa, f), vb = eval_place(pb, f);
    const Json rec = {{"a", {a[0].str(), a[1].str()}}, {"b", {b[0].str(), b[1].str()}}, {"f", f.str()},
                      {"at_a", va.str()}, {"at_b", vb.str()}};
    if (va == lo && vb == hi)
      ++separated;
    else
      failures.push_back(rec);
    if (examples.size() < 3) examples.push_back(rec);
  }
  return finish({{"trials", trials}, {"separated", separated}, {"examples", examples}}, failures);
}

Json nonconvex(Sampler&) {
  const FieldPtr A = HahnField::make(1, ValueGroup::lex(2), "F");
  const EmbeddingContext ctx =
      EmbeddingContext::make(Field::sub(A, true, CoordSubgroup{{true, false}}, "Rn"), Field::full(A, "F"));
  const NonConvexWitness w = nonconvex_witness(ctx);
  Json failures = Json::array();
  for (const auto& [name, ok] : w.checks)
    if (!ok) failures.push_back(name);
  return finish({{"context", to_json(ctx)}, {"witness", to_json(w, ctx)}}, failures);
}

using ProbeFn = std::function<Json(Sampler&)>;

const std::vector<std::pair<std::string, ProbeFn>>& table() {
  static const std::vector<std::pair<std::string, ProbeFn>> t{
      {"power-quotient", power_quotient}, {"stacked-independent", stacked_independent},
      {"three-case", three_case},         {"circle", circle},
      {"compose", compose_probe},         {"linear-separation", linear_separation},
      {"nonconvex", nonconvex}};
  return t;
}

}  // namespace

const std::vector<std::string>& probe_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, fn] : table()) n.push_back(k);
    return n;
  }();
  return names;
}

Json run_probe(const std::string& name, std::uint64_t seed) {
  for (const auto& [k, fn] : table()) {
    if (k != name) continue;
    Sampler s(seed);
    Json head = {{"probe", name}, {"seed", seed}};
    head.update(fn(s));
    return head;
  }
  throw std::invalid_argument("unknown probe '" + name + "'");
}

}  // namespace rplace
