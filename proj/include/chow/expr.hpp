#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chow/config.hpp"
#include "chow/errors.hpp"
#include "chow/exterior.hpp"

// Expression language over the model algebra:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('.' | '*') unary)*     '.' cup, '*' Pontryagin; no mixing without parentheses
//   unary := '-' unary | atom
//   atom  := literal | ident | func '(' args ')' | '(' expr ')'
namespace chow {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { literal, ident, neg, add, sub, cup, pon, call };

  Kind kind;
  Rational value;               // literal
  std::string name;             // ident, call
  std::vector<ExprPtr> args;    // operands or call arguments
  int line = 1;
  int column = 1;
};

/// Throws ParseError with the position of the offending token.
ExprPtr parse_expr(std::string_view text);

/// Fully parenthesized text that parses back to the same tree.
std::string print_expr(const Expr& e);

bool same_tree(const Expr& a, const Expr& b);

using Value = std::variant<ExtClass, Rational, long>;

class EvalError : public Error {
 public:
  using Error::Error;
};

/// Throws EvalError carrying the path of enclosing calls.
Value eval(const Expr& e, const RunConfig& cfg);

/// Terms sorted by (degree, mask): "-a1 . b1 + 1/2 . a1 . a2 . b1 . b2", "one", "pt", "0".
std::string format_class(const ExtClass& x);
std::string format_value(const Value& v);

}  // namespace chow
