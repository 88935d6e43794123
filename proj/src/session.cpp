#include "rplace/session.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <regex>
#include <string_view>
#include <variant>

#include "rplace/expr.hpp"
#include "rplace/probes.hpp"
#include "rplace/sampling.hpp"

namespace rplace {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recursive-descent cursor over one command line. Positions are offsets into
// the full line so that syntax errors point at the right column.
struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    ws();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }
  bool at(char c) {
    ws();
    return pos < s.size() && s[pos] == c;
  }
  bool accept(char c) {
    if (!at(c)) return false;
    ++pos;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_word(const std::string& w) {
    ws();
    if (s.compare(pos, w.size(), w) != 0) return false;
    const std::size_t e = pos + w.size();
    return e >= s.size() || !ident_char(s[e]) || !ident_char(w.back());
  }
  bool accept_word(const std::string& w) {
    if (!at_word(w)) return false;
    pos += w.size();
    return true;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) fail("expected '" + w + "'");
  }
  bool at_ident() {
    ws();
    return pos < s.size() && ident_start(s[pos]);
  }
  std::string peek_ident() {
    ws();
    std::size_t e = pos;
    if (e < s.size() && ident_start(s[e]))
      while (e < s.size() && ident_char(s[e])) ++e;
    return s.substr(pos, e - pos);
  }
  std::string ident() {
    std::string id = peek_ident();
    if (id.empty()) fail("expected a name");
    pos += id.size();
    return id;
  }
  // A name not directly followed by an arithmetic operator.
  bool at_bare_ident(std::string& id) {
    id = peek_ident();
    if (id.empty()) return false;
    const std::size_t e = pos + id.size();
    return e >= s.size() || std::string_view("+-*/^").find(s[e]) == std::string_view::npos;
  }
  // Balanced text up to whitespace, ',' ';' or an unmatched ')'.
  std::pair<std::size_t, std::size_t> chunk() {
    ws();
    const std::size_t b = pos;
    int depth = 0;
    while (pos < s.size()) {
      const char c = s[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';')) break;
      ++pos;
    }
    if (b == pos) fail("expected an argument");
    return {b, pos};
  }
  ExprPtr expr() {
    ws();
    return parse_expr_prefix(s, pos);
  }
  void end() {
    if (!done()) fail("unexpected input");
  }
};

Rational parse_rational_at(Cursor& c) {
  c.ws();
  const std::size_t b = c.pos;
  if (c.pos < c.s.size() && (c.s[c.pos] == '-' || c.s[c.pos] == '+')) ++c.pos;
  auto digits = [&] {
    const std::size_t d = c.pos;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
    if (d == c.pos) c.fail("expected a rational number");
  };
  digits();
  if (c.pos < c.s.size() && c.s[c.pos] == '/') {
    ++c.pos;
    digits();
  }
  try {
    return parse_rational(c.s.substr(b, c.pos - b));
  } catch (const std::exception& e) {
    throw ParseError(e.what(), b);
  }
}

GroupElem parse_tuple(Cursor& c, std::size_t dim) {
  const std::size_t start = (c.ws(), c.pos);
  c.expect('(');
  std::vector<Rational> v;
  if (!c.accept(')')) {
    do v.push_back(parse_rational_at(c));
    while (c.accept(','));
    c.expect(')');
  }
  if (v.size() != dim)
    throw ParseError("expected a tuple of length " + std::to_string(dim) + ", got " + std::to_string(v.size()), start);
  return GroupElem(std::move(v));
}

// all | empty | -inf | +inf | above g | from g | below g
// | above coset g+H_k | from coset g+H_k
GroupCut parse_position(Cursor& c, const ValueGroup& G) {
  if (c.accept_word("all") || c.accept_word("-inf")) return GroupCut::minus_inf();
  if (c.accept_word("empty") || c.accept_word("+inf")) return GroupCut::plus_inf();
  bool upper;
  if (c.accept_word("above"))
    upper = true;
  else if (c.accept_word("from") || c.accept_word("below"))
    upper = false;
  else
    c.fail("expected a group position");
  if (c.accept_word("coset")) {
    GroupElem g = parse_tuple(c, G.dim());
    c.expect('+');
    c.ws();
    if (c.s.compare(c.pos, 2, "H_") != 0) c.fail("expected H_k");
    c.pos += 2;
    const std::size_t b = c.pos;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
    if (b == c.pos) c.fail("expected a level");
    const std::size_t k = std::stoul(c.s.substr(b, c.pos - b));
    if (k > G.num_blocks()) throw ParseError("level beyond the number of blocks", b);
    return canonical(G, upper ? GroupCut::coset_upper(std::move(g), k) : GroupCut::coset_lower(std::move(g), k));
  }
  GroupElem g = parse_tuple(c, G.dim());
  return canonical(G, upper ? GroupCut::above(std::move(g)) : GroupCut::below(std::move(g)));
}

Side parse_side(Cursor& c) {
  if (c.accept_word("lower")) return Side::Lower;
  if (c.accept_word("upper")) return Side::Upper;
  c.fail("expected 'lower' or 'upper'");
}

// Real numbers in Q(sqrt d): weights of independent places.
Quad eval_quad(const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Number: return Quad(Rational(e->number));
    case K::Sqrt:
      if (!e->number.fits_slong_p()) throw std::invalid_argument("bad radicand");
      return Quad::sqrt_of(e->number.get_si());
    case K::Neg: return -eval_quad(e->lhs);
    case K::Add: return eval_quad(e->lhs) + eval_quad(e->rhs);
    case K::Sub: return eval_quad(e->lhs) - eval_quad(e->rhs);
    case K::Mul: return eval_quad(e->lhs) * eval_quad(e->rhs);
    case K::Div: {
      const Quad d = eval_quad(e->rhs);
      if (d.is_zero()) throw std::domain_error("division by zero");
      return eval_quad(e->lhs) / d;
    }
    case K::Pow: {
      if (e->tuple || e->exponent.size() != 1 || e->exponent[0].get_den() != 1 ||
          !e->exponent[0].get_num().fits_slong_p())
        throw std::invalid_argument("weights take integer powers only");
      const long n = e->exponent[0].get_num().get_si();
      Quad b = eval_quad(e->lhs), r(1);
      for (long i = 0; i < std::labs(n); ++i) r *= b;
      if (n < 0) {
        if (r.is_zero()) throw std::domain_error("division by zero");
        r = Quad(1) / r;
      }
      return r;
    }
    case K::Name: throw std::invalid_argument("names are not allowed in a number: " + e->name);
  }
  throw std::logic_error("unreachable");
}

struct ElemEntry {
  Field field;
  FieldElement value;
};
using Entry = std::variant<Field, ElemEntry, Cut, Ball, RPlace>;

const char* kind_name(const Entry& e) {
  switch (e.index()) {
    case 0: return "field";
    case 1: return "element";
    case 2: return "cut";
    case 3: return "ball";
    default: return "place";
  }
}

const std::vector<std::string> kReserved{"t", "sqrt", "in", "to", "at", "over", "into", "from", "order", "var",
                                         "as", "cut", "ball", "edge", "filler", "place", "inf"};

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : sep) + x;
  return out;
}

}  // namespace

struct Session::Impl {
  SessionOptions opts;
  std::map<std::string, Entry> names;
  std::optional<Field> current;

  // -- names -------------------------------------------------------------

  const Entry& entry(const std::string& n) const {
    auto it = names.find(n);
    if (it == names.end()) throw CommandError("unknown-name", "unknown name '" + n + "'");
    return it->second;
  }
  template <class T>
  const T& get(const std::string& n, const char* what) const {
    const Entry& e = entry(n);
    if (auto p = std::get_if<T>(&e)) return *p;
    throw CommandError("wrong-kind", "'" + n + "' is a " + kind_name(e) + ", expected a " + what);
  }
  const Field& field(const std::string& n) const { return get<Field>(n, "field"); }
  const RPlace& place(const std::string& n) const { return get<RPlace>(n, "place"); }
  bool is(const std::string& n, std::size_t index) const {
    auto it = names.find(n);
    return it != names.end() && it->second.index() == index;
  }

  void bind(const std::string& n, Entry e) {
    for (const auto& r : kReserved)
      if (n == r) throw CommandError("reserved-name", "'" + n + "' is reserved");
    if (names.count(n)) throw CommandError("duplicate-name", "'" + n + "' is already defined");
    names.emplace(n, std::move(e));
  }

  // -- expressions ---------------------------------------------------------

  ExprContext context(const FieldPtr& F, std::vector<std::string> vars = {}) const {
    return ExprContext{F, std::move(vars), [this, F](const std::string& n) -> std::optional<FieldElement> {
                         if (n == "t") return std::nullopt;
                         const Entry& e = entry(n);
                         const auto* x = std::get_if<ElemEntry>(&e);
                         if (!x) throw CommandError("wrong-kind", "'" + n + "' is a " + kind_name(e) + ", expected an element");
                         return lift(x->value, F);
                       }};
  }
  FieldElement element(const ExprPtr& e, const Field& F) const {
    FieldElement x = to_element(e, context(F.ambient()));
    if (!F.contains(x)) throw CommandError("not-in-field", x.str() + " is not in " + F.str());
    return x;
  }
  FieldElement element(Cursor& c, const Field& F) const { return element(c.expr(), F); }

  // -- objects -------------------------------------------------------------

  Ball ball(Cursor& c, const Field& F) const {
    std::string id;
    if (c.at_bare_ident(id) && is(id, 3)) {
      c.ident();
      return std::get<Ball>(names.at(id));
    }
    c.expect_word("ball");
    c.expect('(');
    FieldElement center = element(c, F);
    c.expect(';');
    const GroupCut b = parse_position(c, F.value_group());
    c.expect(')');
    return Ball::make(F, std::move(center), FinalSegment{b});
  }

  Cut cut(Cursor& c, const Field& F) const {
    c.accept_word("cut");
    if (c.accept_word("+inf")) return Cut::plus_inf(F);
    if (c.accept_word("-inf")) return Cut::minus_inf(F);
    if (c.accept_word("edge")) {
      c.expect('(');
      Ball B = ball(c, F);
      c.expect(',');
      const Side s = parse_side(c);
      c.expect(')');
      return Cut::edge(std::move(B), s);
    }
    if (c.accept_word("filler")) {
      c.expect('(');
      const ExprPtr g = c.expr();
      c.expect(',');
      const Side s = parse_side(c);
      c.expect(',');
      c.expect_word("over");
      const Field& R = field(c.ident());
      c.expect(')');
      return Cut::filler(R, to_element(g, context(R.ambient())), s);
    }
    if (c.accept_word("restrict")) {
      c.expect('(');
      const Cut C = cut(c, F);
      c.expect(',');
      const Field& R = field(c.ident());
      c.expect(')');
      return restrict(C, R, opts.max_steps);
    }
    if (c.accept_word("induced")) {
      c.expect('(');
      const RPlace& p = place(c.ident());
      c.expect(',');
      const std::string v = c.ident();
      c.expect(')');
      return induced_cut(p, v);
    }
    std::string id;
    if (c.at_bare_ident(id) && is(id, 2)) {
      c.ident();
      return std::get<Cut>(names.at(id));
    }
    // <expr>+ or <expr>-, written without blanks.
    const auto [b, e] = c.chunk();
    const char sign = c.s[e - 1];
    if (e - b < 2 || (sign != '+' && sign != '-')) throw ParseError("expected a cut", b);
    std::string copy = c.s;
    copy[e - 1] = ' ';
    std::size_t p = b;
    const ExprPtr x = parse_expr_prefix(copy, p);
    if (p < e - 1) throw ParseError("unexpected input in cut", p);
    c.pos = e;
    return Cut::principal(F, element(x, F), sign == '+' ? Side::Upper : Side::Lower);
  }

  std::vector<std::string> var_list(Cursor& c) const {
    std::vector<std::string> v;
    do v.push_back(c.ident());
    while (c.accept(','));
    return v;
  }

  RPlace place_expr(Cursor& c, const std::function<Field()>& ctx_field) const {
    c.accept_word("place");
    if (c.accept_word("from-cut")) {
      const Cut C = cut(c, ctx_field());
      c.expect_word("var");
      return place_from_cut(C, c.ident());
    }
    if (c.accept_word("stacked")) {
      const Field F = ctx_field();
      std::map<std::string, FieldElement> at;
      std::vector<std::string> order;
      while (!c.done() && !c.at_word("order")) {
        const std::string v = c.ident();
        c.expect('=');
        if (at.count(v)) c.fail("variable " + v + " assigned twice");
        at.emplace(v, element(c, F));
        order.push_back(v);
      }
      if (c.accept_word("order")) order = var_list(c);
      return stacked_place(F, at, order);
    }
    if (c.accept_word("independent")) {
      const Field F = ctx_field();
      std::vector<std::string> vars;
      std::vector<FieldElement> at;
      std::vector<Quad> w;
      while (!c.done()) {
        vars.push_back(c.ident());
        c.expect('=');
        at.push_back(element(c, F));
        c.expect(':');
        w.push_back(eval_quad(c.expr()));
      }
      return independent_place(F, vars, at, w);
    }
    if (c.accept_word("gauss")) {
      const Field F = ctx_field();
      c.expect_word("var");
      return gauss_extension(F, var_list(c));
    }
    if (c.accept_word("const-ext")) {
      const RPlace& z = place(c.ident());
      c.expect_word("into");
      return constant_ext_embed(z, field(c.ident()));
    }
    if (c.accept_word("compose")) {
      const RPlace& z = place(c.ident());
      std::vector<std::string> xs;
      std::vector<RatFun> images;
      while (!c.done()) {
        xs.push_back(c.ident());
        c.expect('=');
        images.push_back(to_ratfun(c.expr(), context(z.base().ambient(), z.vars())));
      }
      return rational_place_compose(z, xs, images);
    }
    if (c.accept_word("canonical")) return RPlace::canonical(ctx_field());
    if (c.accept_word("embed")) {
      const RPlace& z = place(c.ident());
      c.expect_word("into");
      return iota_place(z, EmbeddingContext::make(z.base(), field(c.ident())));
    }
    if (c.accept_word("restrict")) {
      const RPlace& z = place(c.ident());
      c.expect_word("to");
      return place_restrict(z, var_list(c));
    }
    std::string id;
    if (c.at_bare_ident(id) && is(id, 4)) {
      c.ident();
      return std::get<RPlace>(names.at(id));
    }
    c.fail("expected a place");
  }

  Field field_expr(Cursor& c, const std::string& name, std::optional<FieldElement>& eps) const {
    if (c.accept_word("hahn")) {
      c.expect('(');
      c.expect_word("Q");
      std::int64_t d = 1;
      if (c.accept('(')) {
        const Quad r = eval_quad(c.expr());
        c.expect(')');
        if (r.is_rational()) c.fail("coefficient field must be Q or Q(sqrt(d))");
        d = r.radicand();
      }
      c.expect(';');
      ValueGroup G;
      auto weights = [&] {
        std::vector<Quad> w;
        do w.push_back(eval_quad(c.expr()));
        while (c.accept(','));
        return w;
      };
      if (c.accept_word("lex")) {
        const Rational n = parse_rational_at(c);
        if (n.get_den() != 1 || sgn(n) < 0 || n > 64) c.fail("bad rank");
        G = ValueGroup::lex(n.get_num().get_ui());
      } else if (c.accept_word("weighted")) {
        G = ValueGroup::weighted(weights());
      } else if (c.accept_word("blocks")) {
        c.expect('(');
        std::vector<std::vector<Quad>> blocks;
        do blocks.push_back(weights());
        while (c.accept('|'));
        c.expect(')');
        G = ValueGroup::from_blocks(std::move(blocks));
      } else {
        c.fail("expected 'lex', 'weighted' or 'blocks'");
      }
      c.expect(')');
      return Field::full(HahnField::make(d, std::move(G), name), name);
    }
    if (c.accept_word("sub")) {
      c.expect('(');
      const Field& base = field(c.ident());
      c.expect(';');
      bool rational;
      if (c.accept_word("Q"))
        rational = true;
      else if (c.accept_word("k"))
        rational = false;
      else
        c.fail("expected 'Q' or 'k'");
      c.expect(';');
      c.expect_word("coords");
      const std::size_t dim = base.ambient()->group().dim();
      std::vector<bool> mask(dim, false);
      if (c.accept_word("all")) {
        mask.assign(dim, true);
      } else {
        while (!c.at(')')) {
          const Rational i = parse_rational_at(c);
          if (i.get_den() != 1 || sgn(i) < 0 || i >= static_cast<long>(dim)) c.fail("coordinate out of range");
          mask[i.get_num().get_ui()] = true;
        }
      }
      c.expect(')');
      return Field::sub(base.ambient(), rational, CoordSubgroup{mask}, name);
    }
    if (c.accept_word("adjoin")) {
      c.expect('(');
      const Field& base = field(c.ident());
      c.expect(';');
      const GroupCut at = parse_position(c, base.value_group());
      int sign = 1;
      if (c.accept(';')) {
        if (c.accept('-'))
          sign = -1;
        else
          c.expect('+');
      }
      c.expect(')');
      auto [E, e] = adjoin_infinitesimal(base, at, sign, name);
      eps = e;
      return Field::full(E, name);
    }
    if (c.accept_word("lift")) {
      c.expect('(');
      const Field& R = field(c.ident());
      c.expect(';');
      const Field& E = field(c.ident());
      c.expect(')');
      return R.lifted(E.ambient());
    }
    c.fail("expected hahn(...), sub(...), adjoin(...) or lift(...)");
  }
};

namespace {

// One command invocation.
struct Call {
  Session::Impl& S;
  Cursor& c;
  std::optional<Field> in;  // trailing "in <field>"
  Json inputs = Json::object();
  Json certs = Json::object();

  Field field() const {
    if (in) return *in;
    if (S.current) return *S.current;
    throw CommandError("no-field", "no field in context; define one or add 'in <field>'");
  }
};

using Handler = std::function<Json(Call&)>;

std::string define_name(Call& k) {
  const std::string n = k.c.ident();
  k.c.expect('=');
  k.inputs["name"] = n;
  return n;
}

Json elem_json(const Field& F, const FieldElement& x) {
  return {{"value", x.str()}, {"valuation", valuation_text(F, x)}};
}

// Operand of cmp: element, cut, ball or (after "group") group element.
using Operand = std::variant<FieldElement, Cut, Ball>;
bool looks_like_cut(Cursor& c, const Session::Impl& S) {
  std::string id;
  if (c.at_bare_ident(id)) return S.is(id, 2);
  if (c.at_word("cut") || c.at_word("edge") || c.at_word("filler") || c.at_word("+inf") || c.at_word("-inf") ||
      c.at_word("restrict") || c.at_word("induced"))
    return true;
  const std::size_t save = c.pos;
  const auto [b, e] = c.chunk();
  c.pos = save;
  const char last = c.s[e - 1];
  return e - b >= 2 && (last == '+' || last == '-');
}
Operand operand(Call& k, Session::Impl& S) {
  std::string id;
  if ((k.c.at_bare_ident(id) && S.is(id, 3)) || k.c.at_word("ball")) return S.ball(k.c, k.field());
  if (looks_like_cut(k.c, S)) return S.cut(k.c, k.field());
  return S.element(k.c, k.field());
}
std::string operand_text(const Operand& o) {
  if (auto x = std::get_if<FieldElement>(&o)) return x->str();
  if (auto C = std::get_if<Cut>(&o)) return to_string(*C);
  return to_string(std::get<Ball>(o));
}

EmbeddingContext two_fields(Call& k) {
  const Field& R = k.S.field(k.c.ident());
  const Field& F = k.S.field(k.c.ident());
  k.inputs["R"] = R.str();
  k.inputs["F"] = F.str();
  return EmbeddingContext::make(R, F);
}

const std::vector<std::pair<std::string, Handler>>& table() {
  static const std::vector<std::pair<std::string, Handler>> t{
      {"def-field",
       [](Call& k) -> Json {
         const std::string n = define_name(k);
         std::optional<FieldElement> eps;
         Field F = k.S.field_expr(k.c, n, eps);
         std::string eps_name;
         if (k.c.accept_word("as")) {
           eps_name = k.c.ident();
           if (!eps) k.c.fail("'as' only follows adjoin(...)");
         }
         k.c.end();
         k.S.bind(n, F);
         Json r = {{"field", F.str()}, {"ambient", F.ambient()->str()}, {"value_group", F.value_group().str()}};
         if (!eps_name.empty()) {
           k.S.bind(eps_name, ElemEntry{F, *eps});
           r["element"] = {{"name", eps_name}, {"value", eps->str()}, {"valuation", valuation_text(F, *eps)}};
         }
         k.S.current = F;
         return r;
       }},
      {"def-elem",
       [](Call& k) -> Json {
         const std::string n = define_name(k);
         const Field F = k.field();
         FieldElement x = k.S.element(k.c, F);
         k.c.end();
         k.inputs["field"] = F.str();
         k.S.bind(n, ElemEntry{F, x});
         return elem_json(F, x);
       }},
      {"def-cut",
       [](Call& k) -> Json {
         const std::string n = define_name(k);
         Cut C = k.S.cut(k.c, k.field());
         k.c.end();
         k.S.bind(n, C);
         return {{"cut", to_string(C)}, {"field", C.field().str()}};
       }},
      {"def-ball",
       [](Call& k) -> Json {
         const std::string n = define_name(k);
         Ball B = k.S.ball(k.c, k.field());
         k.c.end();
         k.S.bind(n, B);
         return {{"ball", to_string(B)}, {"field", B.field.str()}};
       }},
      {"def-place",
       [](Call& k) -> Json {
         const std::string n = define_name(k);
         RPlace p = k.S.place_expr(k.c, [&] { return k.field(); });
         k.c.end();
         k.S.bind(n, p);
         return to_json(p);
       }},
      {"use",
       [](Call& k) -> Json {
         const Field& F = k.S.field(k.c.ident());
         k.c.end();
         k.S.current = F;
         return F.str();
       }},
      {"show",
       [](Call& k) -> Json {
         const std::string n = k.c.ident();
         k.c.end();
         const Entry& e = k.S.entry(n);
         Json r = {{"kind", kind_name(e)}};
         std::visit(
             [&](const auto& v) {
               using T = std::decay_t<decltype(v)>;
               if constexpr (std::is_same_v<T, Field>) {
                 r["field"] = v.str();
                 r["ambient"] = v.ambient()->str();
                 r["value_group"] = v.value_group().str();
               } else if constexpr (std::is_same_v<T, ElemEntry>) {
                 r.update(elem_json(v.field, v.value));
               } else if constexpr (std::is_same_v<T, Cut>) {
                 r["cut"] = to_string(v);
               } else if constexpr (std::is_same_v<T, Ball>) {
                 r["ball"] = to_string(v);
               } else {
                 r["place"] = to_json(v);
               }
             },
             e);
         return r;
       }},
      {"parse",
       [](Call& k) -> Json {
         k.c.ws();
         const std::string text = k.c.s.substr(k.c.pos);
         const ExprPtr e = k.c.expr();
         k.c.end();
         k.inputs["text"] = text;
         const std::string printed = print(e);
         k.certs["round_trip"] = expr_equal(parse_expr(printed), e);
         return printed;
       }},
      {"cmp",
       [](Call& k) -> Json {
         if (k.c.accept_word("group")) {
           const ValueGroup& G = k.field().value_group();
           const GroupElem a = parse_tuple(k.c, G.dim()), b = parse_tuple(k.c, G.dim());
           k.c.end();
           k.inputs["left"] = a.str();
           k.inputs["right"] = b.str();
           k.inputs["group"] = G.str();
           return to_string(cmp_group(G, a, b));
         }
         const Operand a = operand(k, k.S);
         const Operand b = operand(k, k.S);
         k.c.end();
         k.inputs["left"] = operand_text(a);
         k.inputs["right"] = operand_text(b);
         if (a.index() != b.index()) throw CommandError("wrong-kind", "cmp needs two operands of one kind");
         if (auto x = std::get_if<FieldElement>(&a)) return to_string(cmp_field(*x, std::get<FieldElement>(b)));
         if (auto C = std::get_if<Cut>(&a)) return to_string(cut_cmp(*C, std::get<Cut>(b), k.S.opts.max_steps));
         const Ball& B1 = std::get<Ball>(a);
         const Ball& B2 = std::get<Ball>(b);
         k.certs["equal"] = ball_eq(B1, B2);
         return to_string(relate(B1, B2));
       }},
      {"member",
       [](Call& k) -> Json {
         const Operand a = operand(k, k.S);
         if (std::holds_alternative<FieldElement>(a)) throw CommandError("wrong-kind", "member needs a ball or a cut");
         const Field F = std::holds_alternative<Ball>(a) ? std::get<Ball>(a).field : std::get<Cut>(a).field();
         const FieldElement x = k.S.element(k.c, F);
         k.c.end();
         k.inputs["set"] = operand_text(a);
         k.inputs["element"] = x.str();
         if (auto B = std::get_if<Ball>(&a)) return ball_contains(*B, x);
         return to_string(side_of(std::get<Cut>(a), x));
       }},
      {"val",
       [](Call& k) -> Json {
         const Field F = k.field();
         const FieldElement x = k.S.element(k.c, F);
         k.c.end();
         k.inputs["element"] = x.str();
         k.inputs["field"] = F.str();
         return valuation_text(F, x);
       }},
      {"residue",
       [](Call& k) -> Json {
         const Field F = k.field();
         const FieldElement x = k.S.element(k.c, F);
         k.c.end();
         k.inputs["element"] = x.str();
         const auto r = rplace::residue(x);
         return r ? r->str() : "inf";
       }},
      {"expand",
       [](Call& k) -> Json {
         const Field F = k.field();
         const FieldElement x = k.S.element(k.c, F);
         k.c.expect_word("to");
         const GroupElem cut = parse_tuple(k.c, F.value_group().dim());
         k.c.end();
         const GroupElem amb = F.embedding().inject(cut);
         k.inputs["element"] = x.str();
         k.inputs["cutoff"] = cut.str();
         const Expansion e = expand(x, amb, k.S.opts.max_steps);
         return {{"terms", e.terms.is_zero() ? "0" : e.terms.str(x.group())},
                 {"tail", e.tail},
                 {"exhausted", e.exhausted}};
       }},
      {"classify",
       [](Call& k) -> Json {
         const Cut C = k.S.cut(k.c, k.field());
         ClassifyOptions o;
         o.max_steps = k.S.opts.max_steps;
         if (k.c.accept_word("cutoff")) o.cutoff = parse_tuple(k.c, C.field().value_group().dim());
         k.c.end();
         k.inputs["cut"] = to_string(C);
         const Classification cl = classify(C, o);
         if (cl.certificate) k.certs["verified"] = verify_certificate(C, cl);
         return to_json(cl);
       }},
      {"equiv",
       [](Call& k) -> Json {
         const Cut a = k.S.cut(k.c, k.field());
         const Cut b = k.S.cut(k.c, k.field());
         k.c.end();
         k.inputs["left"] = to_string(a);
         k.inputs["right"] = to_string(b);
         k.certs["order"] = to_string(cut_cmp(a, b, k.S.opts.max_steps));
         return equivalent(a, b, k.S.opts.max_steps);
       }},
      {"restrict",
       [](Call& k) -> Json {
         std::string id;
         if (k.c.at_bare_ident(id) && k.S.is(id, 4)) {
           const RPlace& p = k.S.place(k.c.ident());
           k.c.expect_word("to");
           const auto vars = k.S.var_list(k.c);
           k.c.end();
           k.inputs["place"] = id;
           k.inputs["vars"] = vars;
           return to_json(place_restrict(p, vars));
         }
         const Cut C = k.S.cut(k.c, k.field());
         k.c.expect_word("to");
         const Field& R = k.S.field(k.c.ident());
         k.c.end();
         k.inputs["cut"] = to_string(C);
         k.inputs["field"] = R.str();
         return to_string(restrict(C, R, k.S.opts.max_steps));
       }},
      {"fiber",
       [](Call& k) -> Json {
         if (!k.in) throw CommandError("no-field", "fiber needs 'in <field>'");
         const Cut C = k.S.cut(k.c, k.field());
         k.c.end();
         k.inputs["cut"] = to_string(C);
         k.inputs["field"] = k.in->str();
         const Fiber f = fiber(C, *k.in, k.S.opts.max_steps);
         k.certs["endpoints"] = to_string(cut_cmp(f.lower, f.upper, k.S.opts.max_steps));
         return to_json(f);
       }},
      {"between",
       [](Call& k) -> Json {
         // between <cut> <cut> | between [around] <ball> at <a> in F | between <cut> at <a> in F
         std::string id;
         std::optional<CutComplementSpec> spec;
         std::string desc;
         if (k.c.accept_word("around") || k.c.at_word("ball") || (k.c.at_bare_ident(id) && k.S.is(id, 3))) {
           const Ball B = k.S.ball(k.c, k.field());
           desc = to_string(B);
           spec = CutComplementSpec::around(B);
         } else {
           const Cut a = k.S.cut(k.c, k.field());
           if (!k.c.at_word("at")) {
             const Cut b = k.S.cut(k.c, k.field());
             k.c.end();
             k.inputs["lower"] = to_string(a);
             k.inputs["upper"] = to_string(b);
             if (cut_cmp(a, b, k.S.opts.max_steps) != Ordering::Less)
               throw CommandError("invalid-argument", "the first cut must lie below the second");
             const FieldElement x = find_between(a, b, k.S.opts.max_steps);
             k.certs["lower_side"] = to_string(side_of(a, x));
             k.certs["upper_side"] = to_string(side_of(b, x));
             return x.str();
           }
           desc = to_string(a);
           spec = CutComplementSpec::of_cut(a);
         }
         if (!k.in) throw CommandError("no-field", "between needs 'in <field>'");
         k.c.expect_word("at");
         const FieldElement x = k.S.element(k.c, *k.in);
         k.c.end();
         k.inputs["pair"] = desc;
         k.inputs["filler"] = x.str();
         const Field R = spec->ball ? spec->ball->field : spec->cut->field();
         k.certs["distance_set"] = to_string(R.value_group(), distance_set(*spec));
         return to_string(between_ball(*spec, *k.in, x));
       }},
      {"embed",
       [](Call& k) -> Json {
         if (k.c.accept_word("exists")) {
           const EmbeddingContext ctx = two_fields(k);
           k.c.end();
           return to_json(ctx);
         }
         if (k.c.accept_word("cut")) {
           const Cut C = k.S.cut(k.c, k.field());
           k.c.expect_word("from");
           const Field& R = k.S.field(k.c.ident());
           k.c.expect_word("into");
           const Field& F = k.S.field(k.c.ident());
           k.c.end();
           k.inputs["cut"] = to_string(C);
           k.inputs["R"] = R.str();
           k.inputs["F"] = F.str();
           const EmbeddingContext ctx = EmbeddingContext::make(R, F);
           const Cut img = iota_tilde(C, ctx);
           k.certs["restricts_back"] = cut_eq(restrict(img, R, k.S.opts.max_steps), C);
           return to_string(img);
         }
         k.c.expect_word("place");
         const std::string pn = k.c.ident();
         const RPlace& p = k.S.place(pn);
         k.c.expect_word("into");
         const Field& F = k.S.field(k.c.ident());
         k.c.end();
         k.inputs["place"] = pn;
         k.inputs["F"] = F.str();
         return to_json(iota_place(p, EmbeddingContext::make(p.base(), F)));
       }},
      {"witness",
       [](Call& k) -> Json {
         if (k.c.accept_word("nonconvex")) {
           const EmbeddingContext ctx = two_fields(k);
           k.c.end();
           return to_json(nonconvex_witness(ctx), ctx);
         }
         if (k.c.accept_word("principal")) {
           const EmbeddingContext ctx = two_fields(k);
           k.c.end();
           return to_json(principal_preservation(ctx));
         }
         if (k.c.accept_word("three-case")) {
           const std::string pn = k.c.ident();
           const RPlace& p = k.S.place(pn);
           const std::string x = k.c.ident(), y = k.c.ident();
           k.c.end();
           k.inputs["place"] = pn;
           k.inputs["vars"] = {x, y};
           const ThreeCase tc = three_case_witness(p, x, y);
           k.certs["in_harrison"] = harrison(p, tc.f);
           return to_json(tc);
         }
         if (k.c.accept_word("distance")) {
           const Ball B = k.S.ball(k.c, k.field());
           const ValueGroup& G = B.field.value_group();
           const GroupElem g = parse_tuple(k.c, G.dim());
           k.c.end();
           k.inputs["ball"] = to_string(B);
           k.inputs["gamma"] = g.str();
           const InitialSegment I = distance_sets(B);
           if (!contains(G, I, g))
             throw CommandError("invalid-argument", g.str() + " is not a distance of " + to_string(B));
           const auto [lo, hi] = distance_pair(B, g);
           k.certs["distance"] = valuation_text(B.field, hi - lo);
           k.certs["lower_outside"] = !ball_contains(B, lo);
           k.certs["upper_outside"] = !ball_contains(B, hi);
           return {{"distance_set", to_string(G, I)},
                   {"segment_above", to_string(G, segment_above(I))},
                   {"lower", lo.str()},
                   {"upper", hi.str()}};
         }
         if (k.c.accept_word("full-ball")) {
           const Ball B = k.S.ball(k.c, k.field());
           long n = 100;
           if (k.c.accept_word("samples")) {
             const Rational q = parse_rational_at(k.c);
             if (q.get_den() != 1 || sgn(q) <= 0 || q > 100000) k.c.fail("bad sample count");
             n = q.get_num().get_si();
           }
           k.c.end();
           k.inputs["ball"] = to_string(B);
           k.inputs["samples"] = n;
           Sampler s(k.S.opts.seed);
           std::vector<Ball> sample;
           for (long i = 0; i < n; ++i) sample.push_back(s.ball(B.field));
           const auto rows = full_ball_interval(B, sample);
           std::map<std::string, int> rel;
           long bad = 0;
           for (const auto& r : rows) {
             ++rel[to_string(r.relation)];
             bad += !r.ok;
           }
           Json counts = Json::object();
           for (const auto& [name, c] : rel) counts[name] = c;
           return {{"rows", rows.size()}, {"relations", counts}, {"failures", bad}, {"ok", bad == 0}};
         }
         if (k.c.accept_word("separate")) {
           const std::string an = k.c.ident(), bn = k.c.ident();
           const RPlace &a = k.S.place(an), &b = k.S.place(bn);
           k.c.end();
           k.inputs["places"] = {an, bn};
           if (!a.cut() || !b.cut() || a.vars() != b.vars())
             throw CommandError("invalid-argument", "separate needs two places of cuts in one variable");
           const auto sep = separate(a, b, glue_candidates(*a.cut(), *b.cut(), a.vars()[0]));
           k.certs["equivalent_cuts"] = equivalent(*a.cut(), *b.cut(), k.S.opts.max_steps);
           if (!sep) return nullptr;
           return {{"f", sep->f.str()}, {"first", sep->first.str()}, {"second", sep->second.str()}};
         }
         k.c.fail("expected nonconvex, principal, three-case, distance, full-ball or separate");
       }},
      {"eval",
       [](Call& k) -> Json {
         std::string id;
         if (k.c.at_bare_ident(id) && k.S.is(id, 4)) {
           const RPlace& p = k.S.place(k.c.ident());
           const RatFun f = to_ratfun(k.c.expr(), k.S.context(p.base().ambient(), p.vars()));
           k.c.end();
           k.inputs["place"] = id;
           k.inputs["f"] = f.str();
           const PlaceValue v = eval_place(p, f);
           Json r = {{"value", v.str()}};
           if (!p.is_gauss()) {
             const EvalResult at = eval_at(f, p.assignment());
             r["valuation"] = at.pole() ? "pole" : (at.value->is_zero() ? "inf" : at.value->valuation()->str());
           }
           r["realization"] = p.description();
           return r;
         }
         // eval <ratfun> at x=<elem> ...
         const Field F = k.field();
         const ExprPtr fe = k.c.expr();
         std::vector<std::string> vars;
         std::map<std::string, FieldElement> at;
         k.c.expect_word("at");
         while (!k.c.done()) {
           const std::string v = k.c.ident();
           k.c.expect('=');
           at.emplace(v, k.S.element(k.c, F));
           vars.push_back(v);
         }
         const RatFun f = to_ratfun(fe, k.S.context(F.ambient(), vars));
         k.inputs["f"] = f.str();
         Json a = Json::object();
         for (const auto& v : vars) a[v] = at.at(v).str();
         k.inputs["at"] = a;
         return eval_at(f, at).str();
       }},
      {"harrison",
       [](Call& k) -> Json {
         const std::string pn = k.c.ident();
         const RPlace& p = k.S.place(pn);
         const RatFun f = to_ratfun(k.c.expr(), k.S.context(p.base().ambient(), p.vars()));
         k.c.end();
         k.inputs["place"] = pn;
         k.inputs["f"] = f.str();
         k.certs["value"] = eval_place(p, f).str();
         return harrison(p, f);
       }},
      {"probe",
       [](Call& k) -> Json {
         k.c.ws();
         const std::size_t b = k.c.pos;
         while (k.c.pos < k.c.s.size() && !std::isspace(static_cast<unsigned char>(k.c.s[k.c.pos]))) ++k.c.pos;
         const std::string name = k.c.s.substr(b, k.c.pos - b);
         k.c.end();
         k.inputs["name"] = name;
         k.inputs["seed"] = k.S.opts.seed;
         const auto& known = probe_names();
         if (std::find(known.begin(), known.end(), name) == known.end())
           throw CommandError("unknown-probe", "unknown probe '" + name + "'; known: " + join(known, ", "));
         return run_probe(name, k.S.opts.seed);
       }},
  };
  return t;
}

}  // namespace

Session::Session(SessionOptions opts) : impl_(std::make_unique<Impl>()) { impl_->opts = opts; }
Session::~Session() = default;
Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&&) noexcept = default;

const std::vector<std::string>& Session::commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, h] : table()) n.push_back(k);
    return n;
  }();
  return names;
}

std::optional<CommandResult> Session::run(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
  std::size_t b = 0;
  while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  if (b == line.size()) return std::nullopt;

  std::size_t e = b;
  while (e < line.size() && !std::isspace(static_cast<unsigned char>(line[e]))) ++e;
  const std::string verb = line.substr(b, e - b);

  CommandResult out;
  out.json["command"] = verb;
  Json inputs = Json::object();
  inputs["text"] = line.substr(std::min(line.size(), e + 1));
  try {
    auto it = std::find_if(table().begin(), table().end(), [&](const auto& p) { return p.first == verb; });
    if (it == table().end()) throw CommandError("unknown-command", "unknown command '" + verb + "'");

    // Trailing "in <field>" at parenthesis depth zero names the context field.
    std::optional<Field> in;
    static const std::regex suffix(R"(\s+in\s+([A-Za-z_][A-Za-z0-9_]*)$)");
    std::smatch m;
    if (std::regex_search(line, m, suffix)) {
      const auto at = static_cast<std::size_t>(m.position(0));
      int depth = 0;
      for (std::size_t i = 0; i < at; ++i) depth += line[i] == '(' ? 1 : (line[i] == ')' ? -1 : 0);
      if (depth == 0 && at > e) {
        in = impl_->field(m[1].str());
        line.resize(at);
      }
    }

    Cursor c{line, e};
    Call call{*impl_, c, in};
    Json result = it->second(call);
    Json merged = inputs;
    merged.update(call.inputs);
    if (in) merged["in"] = in->str();
    out.json["inputs"] = merged;
    out.json["result"] = result;
    if (!call.certs.empty()) out.json["certificates"] = call.certs;
    out.text = result.is_string() ? result.get<std::string>() : result.dump();
  } catch (const std::exception& ex) {
    std::string code = "error";
    Json err;
    if (auto ce = dynamic_cast<const CommandError*>(&ex)) {
      code = ce->code;
    } else if (auto pe = dynamic_cast<const ParseError*>(&ex)) {
      code = "syntax";
      err["position"] = pe->position;
    } else if (dynamic_cast<const PrecisionError*>(&ex)) {
      code = "precision";
    } else if (dynamic_cast<const std::invalid_argument*>(&ex)) {
      code = "invalid-argument";
    } else if (dynamic_cast<const std::domain_error*>(&ex)) {
      code = "domain";
    }
    err["code"] = code;
    err["message"] = ex.what();
    out.json["inputs"] = inputs;
    out.json["error"] = err;
    out.text = "error[" + code + "]: " + ex.what();
    out.ok = false;
  }
  return out;
}

}  // namespace rplace
