#pragma once

#include <memory>

#include "diffquat/tower.hpp"

namespace diffquat {

// Expression AST for the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := integer | 't' | identifier | '(' expr ')' | '-' factor
// Whitespace insensitive; '^' binds tighter than unary minus.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Number;
    Rat number;
    std::string name; // Var
    ExprPtr lhs, rhs;
    int exponent = 0; // Pow
};

ExprPtr parse_expression(const std::string& text); // throws ParseError with offset

// Evaluation into the base field; identifiers other than `var` are rejected.
RatFunc eval_ratfunc(const ExprPtr& e, const std::string& var = "t");
RatFunc parse_ratfunc(const std::string& text, const std::string& var = "t");

// Evaluation over a tower; identifiers name the base variable or generators.
TowerElem eval_tower_elem(const ExprPtr& e, const TowerPtr& tower);
TowerElem parse_tower_elem(const std::string& text, const TowerPtr& tower);

} // namespace diffquat
