#include "rplace/expr.hpp"

#include <cctype>

namespace rplace {

namespace {

ExprPtr node(Expr::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

class Parser {
 public:
  Parser(const std::string& s, std::size_t pos) : s_(s), p_(pos) {}

  ExprPtr expr() {
    ExprPtr l = term();
    for (;;) {
      skip();
      if (peek('+')) {
        ++p_;
        l = node(Expr::Kind::Add, l, term());
      } else if (peek('-')) {
        ++p_;
        l = node(Expr::Kind::Sub, l, term());
      } else {
        return l;
      }
    }
  }

  std::size_t pos() {
    skip();
    return p_;
  }

 private:
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool peek(char c) {
    skip();
    return p_ < s_.size() && s_[p_] == c;
  }
  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", p_);
    ++p_;
  }
  bool digit() {
    skip();
    return p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]));
  }
  mpz_class integer() {
    if (!digit()) throw ParseError("expected a number", p_);
    const std::size_t b = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    return mpz_class(s_.substr(b, p_ - b));
  }
  Rational rational() {
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++p_;
    }
    Rational r(integer());
    if (peek('/')) {
      ++p_;
      const std::size_t at = p_;
      const mpz_class d = integer();
      if (d == 0) throw ParseError("zero denominator", at);
      r /= Rational(d);
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  ExprPtr term() {
    ExprPtr l = unary();
    for (;;) {
      if (peek('*')) {
        ++p_;
        l = node(Expr::Kind::Mul, l, unary());
      } else if (peek('/')) {
        ++p_;
        l = node(Expr::Kind::Div, l, unary());
      } else {
        return l;
      }
    }
  }

  ExprPtr unary() {
    if (peek('-')) {
      ++p_;
      return node(Expr::Kind::Neg, unary());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!peek('^')) return base;
    ++p_;
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->lhs = base;
    if (digit()) {
      e->exponent.push_back(Rational(integer()));
      return e;
    }
    expect('(');
    if (peek('(')) {
      ++p_;
      e->tuple = true;
      e->exponent.push_back(rational());
      while (peek(',')) {
        ++p_;
        e->exponent.push_back(rational());
      }
      expect(')');
    } else {
      e->exponent.push_back(rational());
    }
    expect(')');
    return e;
  }

  ExprPtr atom() {
    skip();
    if (p_ >= s_.size()) throw ParseError("unexpected end of input", p_);
    const char c = s_[p_];
    if (c == '(') {
      ++p_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = integer();
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t b = p_;
      while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
      auto e = std::make_shared<Expr>();
      e->name = s_.substr(b, p_ - b);
      if (e->name == "sqrt" && peek('(')) {
        ++p_;
        e->kind = Expr::Kind::Sqrt;
        e->number = integer();
        expect(')');
        return e;
      }
      e->kind = Expr::Kind::Name;
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", p_);
  }

  const std::string& s_;
  std::size_t p_;
};

bool is_atom(const Expr& e) {
  return e.kind == Expr::Kind::Number || e.kind == Expr::Kind::Sqrt || e.kind == Expr::Kind::Name;
}
bool is_additive(const Expr& e) { return e.kind == Expr::Kind::Add || e.kind == Expr::Kind::Sub; }
bool is_binary(const Expr& e) {
  return is_additive(e) || e.kind == Expr::Kind::Mul || e.kind == Expr::Kind::Div;
}
std::string wrap(const ExprPtr& e, bool paren) { return paren ? "(" + print(e) + ")" : print(e); }

}  // namespace

ExprPtr parse_expr_prefix(const std::string& text, std::size_t& pos) {
  Parser p(text, pos);
  ExprPtr e = p.expr();
  pos = p.pos();
  return e;
}

ExprPtr parse_expr(const std::string& text) {
  std::size_t pos = 0;
  ExprPtr e = parse_expr_prefix(text, pos);
  if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
  return e;
}

std::string print(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Number: return e->number.get_str();
    case Expr::Kind::Sqrt: return "sqrt(" + e->number.get_str() + ")";
    case Expr::Kind::Name: return e->name;
    case Expr::Kind::Neg: return "-" + wrap(e->lhs, is_binary(*e->lhs));
    case Expr::Kind::Add: return print(e->lhs) + "+" + wrap(e->rhs, is_additive(*e->rhs));
    case Expr::Kind::Sub: return print(e->lhs) + "-" + wrap(e->rhs, is_additive(*e->rhs));
    case Expr::Kind::Mul: return wrap(e->lhs, is_additive(*e->lhs)) + "*" + wrap(e->rhs, is_binary(*e->rhs));
    case Expr::Kind::Div: return wrap(e->lhs, is_additive(*e->lhs)) + "/" + wrap(e->rhs, is_binary(*e->rhs));
    case Expr::Kind::Pow: {
      std::string s = wrap(e->lhs, !is_atom(*e->lhs)) + "^";
      if (e->tuple) {
        s += "((";
        for (std::size_t i = 0; i < e->exponent.size(); ++i) s += (i ? "," : "") + to_string(e->exponent[i]);
        return s + "))";
      }
      const Rational& q = e->exponent[0];
      if (sgn(q) >= 0 && q.get_den() == 1) return s + to_string(q);
      return s + "(" + to_string(q) + ")";
    }
  }
  return "";
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Sqrt: return a->number == b->number;
    case Expr::Kind::Name: return a->name == b->name;
    case Expr::Kind::Pow:
      return a->tuple == b->tuple && a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

// ---------------------------------------------------------------------------

namespace {

FieldElement one(const ExprContext& ctx) { return FieldElement(ctx.field, Quad(1)); }

RatFun constant(const ExprContext& ctx, const FieldElement& c) { return RatFun::constant(ctx.field, ctx.vars, c); }

bool is_var(const ExprContext& ctx, const std::string& n) {
  for (const auto& v : ctx.vars)
    if (v == n) return true;
  return false;
}

std::optional<FieldElement> bound(const ExprContext& ctx, const std::string& n) {
  if (!ctx.lookup) return std::nullopt;
  auto x = ctx.lookup(n);
  if (!x) return std::nullopt;
  return lift(*x, ctx.field);
}

bool is_generic_t(const ExprContext& ctx, const Expr& e) {
  return e.kind == Expr::Kind::Name && e.name == "t" && !is_var(ctx, "t") && !bound(ctx, "t");
}

RatFun monomial(const ExprContext& ctx, const Expr& pow) {
  const ValueGroup& G = ctx.field->group();
  if (pow.exponent.size() != G.dim() || (!pow.tuple && G.dim() != 1)) {
    throw std::invalid_argument("exponent of t must be an element of a group of rank " + std::to_string(G.dim()));
  }
  return constant(ctx, FieldElement::monomial(ctx.field, GroupElem(pow.exponent)));
}

// x^q for a monomial x with coefficient one.
FieldElement root_power(const FieldElement& x, const Rational& q) {
  if (x.den().size() != 1 || x.num().size() != 1 || !(x.num().leading().coeff == Quad(1))) {
    throw std::invalid_argument("fractional powers need a monomial base, got " + x.str());
  }
  return FieldElement::monomial(x.field(), q * x.num().leading().exp);
}

}  // namespace

RatFun to_ratfun(const ExprPtr& e, const ExprContext& ctx) {
  switch (e->kind) {
    case Expr::Kind::Number: return constant(ctx, FieldElement(ctx.field, Quad(Rational(e->number))));
    case Expr::Kind::Sqrt: {
      if (e->number <= 0 || !e->number.fits_slong_p()) throw std::invalid_argument("bad radicand " + e->number.get_str());
      return constant(ctx, FieldElement(ctx.field, Quad::sqrt_of(e->number.get_si())));
    }
    case Expr::Kind::Name: {
      if (is_var(ctx, e->name)) return RatFun::variable(ctx.field, ctx.vars, e->name);
      if (auto x = bound(ctx, e->name)) return constant(ctx, *x);
      if (e->name == "t" && ctx.field->group().dim() == 1) {
        return constant(ctx, FieldElement::monomial(ctx.field, GroupElem(std::vector<Rational>{Rational(1)})));
      }
      throw std::invalid_argument("unknown name " + e->name);
    }
    case Expr::Kind::Neg: return -to_ratfun(e->lhs, ctx);
    case Expr::Kind::Add: return to_ratfun(e->lhs, ctx) + to_ratfun(e->rhs, ctx);
    case Expr::Kind::Sub: return to_ratfun(e->lhs, ctx) - to_ratfun(e->rhs, ctx);
    case Expr::Kind::Mul: return to_ratfun(e->lhs, ctx) * to_ratfun(e->rhs, ctx);
    case Expr::Kind::Div: {
      const RatFun d = to_ratfun(e->rhs, ctx);
      if (d.is_zero()) throw std::domain_error("division by zero");
      return to_ratfun(e->lhs, ctx) / d;
    }
    case Expr::Kind::Pow: {
      if (is_generic_t(ctx, *e->lhs)) return monomial(ctx, *e);
      if (e->tuple) throw std::invalid_argument("tuple exponents are only allowed on t");
      const Rational& q = e->exponent[0];
      const RatFun b = to_ratfun(e->lhs, ctx);
      if (q.get_den() == 1) {
        if (!q.get_num().fits_slong_p()) throw std::invalid_argument("exponent too large");
        if (b.is_zero() && sgn(q) < 0) throw std::domain_error("division by zero");
        return b.pow(q.get_num().get_si());
      }
      const auto c = b.as_constant();
      if (!c) throw std::invalid_argument("fractional power of a non-constant");
      return constant(ctx, root_power(*c, q));
    }
  }
  throw std::logic_error("unreachable");
}

FieldElement to_element(const ExprPtr& e, const ExprContext& ctx) {
  ExprContext c = ctx;
  c.vars.clear();
  return *to_ratfun(e, c).as_constant();
}

RatFun parse_ratfun(const std::string& text, const ExprContext& ctx) { return to_ratfun(parse_expr(text), ctx); }
FieldElement parse_element(const std::string& text, const ExprContext& ctx) { return to_element(parse_expr(text), ctx); }

}  // namespace rplace
