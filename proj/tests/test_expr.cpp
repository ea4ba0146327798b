#include <doctest.h>

#include <random>

#include "chow/expr.hpp"

using namespace chow;

namespace {

const RunConfig& cfg2() {
  static const RunConfig cfg = RunConfig::defaults(2);
  return cfg;
}

Value ev(const std::string& text, const RunConfig& cfg = cfg2()) { return eval(*parse_expr(text), cfg); }

std::string show(const std::string& text) { return format_value(ev(text)); }

// Random expression text over the grammar, with explicit parentheses where
// '.' and '*' would otherwise mix.
std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
  static const char* atoms[] = {"one", "pt", "a1", "b2", "d", "3/4", "2"};
  std::uniform_int_distribution<int> atom(0, 6);
  switch (pick(rng)) {
    case 0:
    case 1:
    case 2:
    case 3:
      return atoms[atom(rng)];
    case 4:
      return "-" + random_expr(rng, depth - 1);
    case 5:
      return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 6:
      return random_expr(rng, depth - 1) + " - (" + random_expr(rng, depth - 1) + ")";
    case 7:
      return "(" + random_expr(rng, depth - 1) + ") . (" + random_expr(rng, depth - 1) + ")";
    case 8:
      return "(" + random_expr(rng, depth - 1) + ") * (" + random_expr(rng, depth - 1) + ")";
    default:
      return "F(d, " + random_expr(rng, depth - 1) + ")";
  }
}

}  // namespace

TEST_CASE("print then parse gives the same tree") {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 300; ++i) {
    const std::string text = random_expr(rng, 4);
    INFO(text);
    const ExprPtr e = parse_expr(text);
    const ExprPtr back = parse_expr(print_expr(*e));
    CHECK(same_tree(*e, *back));
    CHECK(print_expr(*back) == print_expr(*e));
  }
}

TEST_CASE("precedence and associativity") {
  CHECK(print_expr(*parse_expr("a1 + b1 . b2 - pt")) == print_expr(*parse_expr("(a1 + (b1 . b2)) - pt")));
  CHECK(print_expr(*parse_expr("-a1 . b1")) == print_expr(*parse_expr("(-a1) . b1")));
  CHECK(same_tree(*parse_expr("a1 . b1 . a2"), *parse_expr("(a1 . b1) . a2")));
  CHECK_FALSE(same_tree(*parse_expr("a1 - b1 - a2"), *parse_expr("a1 - (b1 - a2)")));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_expr("a1 . b1 * a2");
    FAIL("mixed products must not parse");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
  }
  try {
    parse_expr("one +\n  $");
    FAIL("bad character");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  for (const char* bad : {"", "(", "a1 +", "foo(1)", "F(d)", "exp(1, 2)", "1/", "a1 b1", "F(d,)"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_expr(bad), ParseError);
  }
}

TEST_CASE("evaluation") {
  CHECK(show("F(d, exp(d))") == "one - a1 . b1 - a2 . b2 + pt");
  CHECK(show("exp(d)") == "one + a1 . b1 + a2 . b2 + pt");
  CHECK(show("pt * pt") == "pt");
  CHECK(show("b1 . a1") == "-a1 . b1");
  CHECK(show("1/2 . d") == "1/2 . a1 . b1 + 1/2 . a2 . b2");
  CHECK(show("F(d, pt)") == "one");
  CHECK(show("a1 - a1") == "0");
  CHECK(show("2 + 1/3") == "7/3");
  CHECK(show("N(two)") == "4");
  CHECK(show("L(id)") == show("d"));
  CHECK(show("order_pon(d)") == "2");
  CHECK(show("order_cup(d)") == "2");
  CHECK(show("order_pon(pt)") == "4");
  CHECK(show("push(2, one)") == "16 . one");
  CHECK(show("pull(-1, a1)") == "-a1");
  CHECK(show("bracket(d, pt, one)") == "0");
  CHECK(ev("F(d, F(d, a1 . b1))") == ev("a1 . b1"));
  CHECK(ev("F(d1, exp(d1))") == ev("exp(-d1)"));
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(ev("a3"), EvalError);
  CHECK_THROWS_AS(ev("zz"), EvalError);
  CHECK_THROWS_AS(ev("one + 1"), EvalError);
  CHECK_THROWS_AS(ev("F(pt, one)"), EvalError);
  CHECK_THROWS_AS(ev("N(d)"), EvalError);
  CHECK_THROWS_AS(ev("push(1/2, one)"), EvalError);
  try {
    ev("F(d, exp(a1))");
    FAIL("exp of an odd class");
  } catch (const EvalError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("in F (line 1, column 1)") == 0);
    CHECK(msg.find("in exp (line 1, column 6)") != std::string::npos);
  }
}

TEST_CASE("formatting applies the orientation sign to the point class") {
  const auto ctx = ModelContext::make(2);
  CHECK(format_class(ExtClass::point(ctx)) == "pt");
  CHECK(format_class(Rational(-3) * ExtClass::point(ctx)) == "-3 . pt");
  CHECK(format_class(ExtClass(ctx)) == "0");
  CHECK(format_value(Value(7L)) == "7");
}
