#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rplace/ratfun.hpp"

namespace rplace {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Arithmetic expressions. `t^(q)` / `t^((q1,...,qn))` with the reserved
/// name t denote monomials of the value group.
struct Expr {
  enum class Kind { Number, Sqrt, Name, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  mpz_class number;                 // Number, Sqrt
  std::string name;                 // Name
  std::vector<Rational> exponent;   // Pow
  bool tuple = false;               // Pow: exponent written as a group tuple
  std::shared_ptr<const Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(const std::string& text);
/// Parses the longest expression starting at pos and advances pos past it
/// (and trailing blanks).
ExprPtr parse_expr_prefix(const std::string& text, std::size_t& pos);
std::string print(const ExprPtr& e);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

struct ExprContext {
  FieldPtr field;
  std::vector<std::string> vars;
  std::function<std::optional<FieldElement>(const std::string&)> lookup;
};

RatFun to_ratfun(const ExprPtr& e, const ExprContext& ctx);
FieldElement to_element(const ExprPtr& e, const ExprContext& ctx);

RatFun parse_ratfun(const std::string& text, const ExprContext& ctx);
FieldElement parse_element(const std::string& text, const ExprContext& ctx);

}  // namespace rplace
