#include "chow/expr.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "chow/ns_jordan.hpp"
#include "chow/operators.hpp"

namespace chow {

namespace {

struct Token {
  enum class Type { number, ident, symbol, end };
  Type type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line, col = column;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '/') {
        ++j;
        const std::size_t den = j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == den) throw ParseError("missing denominator after '/'", l, col);
      }
      out.push_back({Token::Type::number, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Type::ident, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
    } else if (std::string_view("+-.*(),").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::symbol, std::string(1, c), l, col});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l, col);
    }
  }
  out.push_back({Token::Type::end, "", line, column});
  return out;
}

const std::map<std::string, std::size_t, std::less<>> kArity = {
    {"exp", 1}, {"F", 2}, {"bracket", 3}, {"push", 2},      {"pull", 2},
    {"L", 1},   {"N", 1}, {"order_cup", 1}, {"order_pon", 1},
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().type != Token::Type::end) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr lhs = term();
    while (is_symbol("+") || is_symbol("-")) {
      const Token op = take();
      ExprPtr rhs = term();
      lhs = node(op.text == "+" ? Expr::Kind::add : Expr::Kind::sub, op, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    std::string chain;
    while (is_symbol(".") || is_symbol("*")) {
      const Token op = take();
      if (!chain.empty() && chain != op.text)
        throw ParseError("mixed '.' and '*' products need parentheses", op.line, op.column);
      chain = op.text;
      ExprPtr rhs = unary();
      lhs = node(op.text == "." ? Expr::Kind::cup : Expr::Kind::pon, op, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_symbol("-")) {
      const Token op = take();
      return node(Expr::Kind::neg, op, {unary()});
    }
    return atom();
  }

  ExprPtr atom() {
    const Token t = peek();
    if (t.type == Token::Type::number) {
      take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::literal;
      try {
        e->value = parse_rational(t.text);
      } catch (const ParseError& err) {
        throw ParseError("malformed number '" + t.text + "'", t.line, t.column);
      }
      e->line = t.line;
      e->column = t.column;
      return e;
    }
    if (t.type == Token::Type::ident) {
      take();
      if (!is_symbol("(")) {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::ident;
        e->name = t.text;
        e->line = t.line;
        e->column = t.column;
        return e;
      }
      auto it = kArity.find(t.text);
      if (it == kArity.end()) throw ParseError("unknown function '" + t.text + "'", t.line, t.column);
      take();
      std::vector<ExprPtr> args;
      if (!is_symbol(")")) {
        args.push_back(expr());
        while (is_symbol(",")) {
          take();
          args.push_back(expr());
        }
      }
      expect(")");
      if (args.size() != it->second)
        throw ParseError(t.text + " takes " + std::to_string(it->second) + " argument(s), got " +
                             std::to_string(args.size()),
                         t.line, t.column);
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::call;
      e->name = t.text;
      e->args = std::move(args);
      e->line = t.line;
      e->column = t.column;
      return e;
    }
    if (is_symbol("(")) {
      take();
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (t.type == Token::Type::end) fail("unexpected end of input");
    fail("unexpected '" + t.text + "'");
  }

  ExprPtr node(Expr::Kind kind, const Token& at, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = std::move(args);
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool is_symbol(std::string_view s) const { return peek().type == Token::Type::symbol && peek().text == s; }
  void expect(std::string_view s) {
    if (!is_symbol(s)) fail("expected '" + std::string(s) + "'");
    take();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string print_expr(const Expr& e) {
  auto binary = [&](const char* op) {
    return "(" + print_expr(*e.args[0]) + " " + op + " " + print_expr(*e.args[1]) + ")";
  };
  switch (e.kind) {
    case Expr::Kind::literal:
      return to_string(e.value);
    case Expr::Kind::ident:
      return e.name;
    case Expr::Kind::neg:
      return "(-" + print_expr(*e.args[0]) + ")";
    case Expr::Kind::add:
      return binary("+");
    case Expr::Kind::sub:
      return binary("-");
    case Expr::Kind::cup:
      return binary(".");
    case Expr::Kind::pon:
      return binary("*");
    case Expr::Kind::call: {
      std::string out = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? ", " : "") + print_expr(*e.args[i]);
      return out + ")";
    }
  }
  return {};
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == Expr::Kind::literal && a.value != b.value) return false;
  if ((a.kind == Expr::Kind::ident || a.kind == Expr::Kind::call) && a.name != b.name) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  return true;
}

// ------------------------------------------------------------------ printing

std::string format_class(const ExtClass& x) {
  if (x.is_zero()) return "0";
  const ModelContext& ctx = x.context();
  std::vector<std::pair<Mask, Rational>> terms(x.terms().begin(), x.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = degree_of(a.first), db = degree_of(b.first);
    return da != db ? da < db : a.first < b.first;
  });
  std::string out;
  for (auto [mask, coeff] : terms) {
    std::string mono;
    if (mask == 0) {
      mono = "one";
    } else if (mask == ctx.top_mask()) {
      mono = "pt";
      coeff *= ctx.orientation_sign();
    } else {
      for (int i = 0; i < ctx.generator_count(); ++i)
        if (mask >> i & 1u) mono += (mono.empty() ? "" : " . ") + ctx.generator_name(i);
    }
    const bool negative = sgn(coeff) < 0;
    const Rational mag = abs(coeff);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + " . ";
    out += mono;
  }
  return out;
}

std::string format_value(const Value& v) {
  if (const auto* c = std::get_if<ExtClass>(&v)) return format_class(*c);
  if (const auto* q = std::get_if<Rational>(&v)) return to_string(*q);
  return std::to_string(std::get<long>(v));
}

// ---------------------------------------------------------------- evaluation

namespace {

std::string at(const Expr& e) { return " (line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ")"; }

class Evaluator {
 public:
  explicit Evaluator(const RunConfig& cfg) : cfg_(cfg), ctx_(cfg.ctx) {}

  Value run(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::literal:
        return e.value;
      case Expr::Kind::ident:
        return ident(e);
      case Expr::Kind::neg: {
        Value v = run(*e.args[0]);
        if (auto* c = std::get_if<ExtClass>(&v)) return -*c;
        return Rational(-scalar(v, e));
      }
      case Expr::Kind::add:
      case Expr::Kind::sub: {
        Value a = run(*e.args[0]);
        Value b = run(*e.args[1]);
        const bool plus = e.kind == Expr::Kind::add;
        if (is_class(a) != is_class(b)) throw EvalError("cannot add a scalar and a class" + at(e));
        if (is_class(a)) {
          const auto& x = std::get<ExtClass>(a);
          const auto& y = std::get<ExtClass>(b);
          return plus ? x + y : x - y;
        }
        return Rational(plus ? Rational(scalar(a, e) + scalar(b, e)) : Rational(scalar(a, e) - scalar(b, e)));
      }
      case Expr::Kind::cup:
      case Expr::Kind::pon: {
        Value a = run(*e.args[0]);
        Value b = run(*e.args[1]);
        if (!is_class(a) && !is_class(b)) return Rational(scalar(a, e) * scalar(b, e));
        if (!is_class(a)) return scalar(a, e) * std::get<ExtClass>(b);
        if (!is_class(b)) return scalar(b, e) * std::get<ExtClass>(a);
        const auto& x = std::get<ExtClass>(a);
        const auto& y = std::get<ExtClass>(b);
        return e.kind == Expr::Kind::cup ? wedge(x, y) : pontryagin(x, y);
      }
      case Expr::Kind::call:
        try {
          return call(e);
        } catch (const EvalError& err) {
          throw EvalError("in " + e.name + at(e) + ": " + err.what());
        } catch (const Error& err) {
          throw EvalError("in " + e.name + at(e) + ": " + err.what());
        }
    }
    throw EvalError("unknown expression node");
  }

 private:
  static bool is_class(const Value& v) { return std::holds_alternative<ExtClass>(v); }

  static Rational scalar(const Value& v, const Expr& e) {
    if (const auto* q = std::get_if<Rational>(&v)) return *q;
    if (const auto* n = std::get_if<long>(&v)) return Rational(*n);
    throw EvalError("expected a scalar" + at(e));
  }

  ExtClass cls(const Expr& e) {
    Value v = run(e);
    if (auto* c = std::get_if<ExtClass>(&v)) return *c;
    // A bare scalar stands for that multiple of the unit class.
    return scalar(v, e) * ExtClass::unit(ctx_);
  }

  Value ident(const Expr& e) {
    const std::string& n = e.name;
    if (n == "one") return ExtClass::unit(ctx_);
    if (n == "pt") return ExtClass::point(ctx_);
    if (n.size() >= 2 && n.size() <= 3 && (n[0] == 'a' || n[0] == 'b') &&
        std::all_of(n.begin() + 1, n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int i = std::stoi(n.substr(1));
      if (i < 1 || i > ctx_.g()) throw EvalError("generator " + n + " does not exist for g = " + std::to_string(ctx_.g()) + at(e));
      return ExtClass::generator(ctx_, *ctx_.generator_index(n));
    }
    for (const auto& p : cfg_.polarizations)
      if (p.name == n) return p.pol->cls();
    throw EvalError("unknown identifier '" + n + "'" + at(e));
  }

  const Polarization& polarization_arg(const Expr& e) {
    if (e.kind != Expr::Kind::ident) throw EvalError("expected a polarization name" + at(e));
    for (const auto& p : cfg_.polarizations)
      if (p.name == e.name) return *p.pol;
    throw EvalError("unknown polarization '" + e.name + "'" + at(e));
  }

  const Endo& endo_arg(const Expr& e) {
    if (e.kind != Expr::Kind::ident) throw EvalError("expected an endomorphism name" + at(e));
    for (const auto& f : cfg_.endomorphisms)
      if (f.name == e.name) return f.endo;
    throw EvalError("unknown endomorphism '" + e.name + "'" + at(e));
  }

  long integer_arg(const Expr& e) {
    const Rational q = scalar(run(e), e);
    if (!is_integer(q) || !q.get_num().fits_slong_p()) throw EvalError("expected an integer" + at(e));
    return q.get_num().get_si();
  }

  Value call(const Expr& e) {
    const std::string& f = e.name;
    const auto& a = e.args;
    if (f == "exp") return exp_class(cls(*a[0]));
    if (f == "F") {
      const Polarization& pol = polarization_arg(*a[0]);
      return fourier(pol, cls(*a[1]));
    }
    if (f == "bracket") {
      const Polarization& pol = polarization_arg(*a[0]);
      return bracket_xi(pol, cls(*a[1]), cls(*a[2]));
    }
    if (f == "push" || f == "pull") {
      const long n = integer_arg(*a[0]);
      const Matrix m = Matrix::scalar(static_cast<std::size_t>(ctx_.generator_count()), Rational(n));
      return f == "push" ? pushforward_linear(m, cls(*a[1])) : pullback_linear(m, cls(*a[1]));
    }
    if (f == "L") return L_of(endo_arg(*a[0]));
    if (f == "N") return N_of(endo_arg(*a[0]));
    if (f == "order_cup") return static_cast<long>(diff_order(op_mul_pontryagin(cls(*a[0])), Product::cup));
    if (f == "order_pon") return static_cast<long>(diff_order(op_mul_cup(cls(*a[0])), Product::pontryagin));
    throw EvalError("unknown function '" + f + "'");
  }

  const RunConfig& cfg_;
  const ModelContext& ctx_;
};

}  // namespace

Value eval(const Expr& e, const RunConfig& cfg) { return Evaluator(cfg).run(e); }

}  // namespace chow
