#include "chow/jacobian.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "chow/errors.hpp"

namespace chow {

TautPoly::TautPoly(int n) : n_(n) {
  if (n < 0) throw PreconditionError("truncation bound must be non-negative");
}

TautPoly TautPoly::one(int n) { return constant(n, Rational(1)); }

TautPoly TautPoly::constant(int n, const Rational& c) {
  TautPoly p(n);
  p.add_term(Exponents(n + 1, 0), c);
  return p;
}

TautPoly TautPoly::var(int n, int s) {
  TautPoly p(n);
  if (s < 0) throw PreconditionError("variable index must be non-negative");
  if (s > n) return p;
  Exponents e(n + 1, 0);
  e[s] = 1;
  p.add_term(e, Rational(1));
  return p;
}

TautPoly TautPoly::curve_class(int n) {
  TautPoly p(n);
  for (int s = 0; s <= n; ++s) p += var(n, s);
  return p;
}

Rational TautPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int TautPoly::s_weight(const Exponents& e) {
  int w = 0;
  for (std::size_t s = 0; s < e.size(); ++s) w += static_cast<int>(s) * e[s];
  return w;
}

int TautPoly::factor_count(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void TautPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != static_cast<std::size_t>(n_ + 1)) throw DimensionMismatch("exponent vector has wrong length");
  if (chow::is_zero(c) || s_weight(e) > n_) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (chow::is_zero(it->second)) terms_.erase(it);
  }
}

namespace {

void require_same(const TautPoly& a, const TautPoly& b) {
  if (a.truncation() != b.truncation()) throw DimensionMismatch("polynomials with different truncation bounds");
}

}  // namespace

TautPoly& TautPoly::operator+=(const TautPoly& o) {
  require_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TautPoly& TautPoly::operator-=(const TautPoly& o) {
  require_same(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TautPoly operator-(const TautPoly& a) { return Rational(-1) * a; }

TautPoly operator*(const Rational& s, const TautPoly& a) {
  TautPoly out(a.n_);
  if (is_zero(s)) return out;
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, s * c);
  return out;
}

bool operator==(const TautPoly& a, const TautPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

TautPoly pontryagin_mul(const TautPoly& p, const TautPoly& q) {
  require_same(p, q);
  const int n = p.truncation();
  TautPoly out(n);
  TautPoly::Exponents e(n + 1);
  for (const auto& [ep, cp] : p.terms())
    for (const auto& [eq, cq] : q.terms()) {
      if (TautPoly::s_weight(ep) + TautPoly::s_weight(eq) > n) continue;
      for (int s = 0; s <= n; ++s) e[s] = ep[s] + eq[s];
      out.add_term(e, cp * cq);
    }
  return out;
}

TautPoly bracket_gen(int n, int s, int t) {
  if (s < 0 || t < 0) throw PreconditionError("generator indices must be non-negative");
  const Rational c = -Rational(binomial(s + t + 2, s + 1));
  return c * TautPoly::var(n, s + t);
}

namespace {

// d/dx_s as a list of (s, derivative) pairs with nonzero derivative.
std::vector<std::pair<int, TautPoly>> partials(const TautPoly& p) {
  const int n = p.truncation();
  std::vector<TautPoly> d(n + 1, TautPoly(n));
  for (const auto& [e, c] : p.terms())
    for (int s = 0; s <= n; ++s) {
      if (e[s] == 0) continue;
      auto f = e;
      --f[s];
      d[s].add_term(f, c * e[s]);
    }
  std::vector<std::pair<int, TautPoly>> out;
  for (int s = 0; s <= n; ++s)
    if (!d[s].is_zero()) out.emplace_back(s, std::move(d[s]));
  return out;
}

}  // namespace

TautPoly bracket(const TautPoly& p, const TautPoly& q) {
  require_same(p, q);
  const int n = p.truncation();
  TautPoly out(n);
  const auto dp = partials(p);
  const auto dq = partials(q);
  for (const auto& [s, ps] : dp)
    for (const auto& [t, qt] : dq) {
      if (s + t > n) continue;
      out += pontryagin_mul(pontryagin_mul(ps, qt), bracket_gen(n, s, t));
    }
  return out;
}

namespace {

TautPoly monomial(int n, const TautPoly::Exponents& e) {
  TautPoly p(n);
  p.add_term(e, Rational(1));
  return p;
}

// Index of the lowest variable present, or -1 for the unit monomial.
int first_factor(const TautPoly::Exponents& e) {
  for (std::size_t s = 0; s < e.size(); ++s)
    if (e[s]) return static_cast<int>(s);
  return -1;
}

TautPoly leibniz_monomials(int n, const TautPoly::Exponents& a, const TautPoly::Exponents& b, LeibnizOrder order);

// Peel one factor off `split`; `other` stays whole. `split_is_first` tracks argument position.
TautPoly peel(int n, const TautPoly::Exponents& split, const TautPoly::Exponents& other, bool split_is_first,
              LeibnizOrder order) {
  const int s = first_factor(split);
  auto rest = split;
  --rest[s];
  TautPoly::Exponents single(n + 1, 0);
  single[s] = 1;
  auto call = [&](const TautPoly::Exponents& piece) {
    return split_is_first ? leibniz_monomials(n, piece, other, order) : leibniz_monomials(n, other, piece, order);
  };
  // {x_s R, Q} = x_s {R, Q} + R {x_s, Q}
  return pontryagin_mul(monomial(n, single), call(rest)) + pontryagin_mul(monomial(n, rest), call(single));
}

TautPoly leibniz_monomials(int n, const TautPoly::Exponents& a, const TautPoly::Exponents& b, LeibnizOrder order) {
  const int fa = TautPoly::factor_count(a);
  const int fb = TautPoly::factor_count(b);
  if (fa == 0 || fb == 0) return TautPoly(n);
  if (fa == 1 && fb == 1) return bracket_gen(n, first_factor(a), first_factor(b));
  const bool first = order == LeibnizOrder::first_argument ? fa > 1 : fb == 1;
  return first ? peel(n, a, b, true, order) : peel(n, b, a, false, order);
}

}  // namespace

TautPoly bracket_leibniz(const TautPoly& p, const TautPoly& q, LeibnizOrder order) {
  require_same(p, q);
  const int n = p.truncation();
  TautPoly out(n);
  for (const auto& [ea, ca] : p.terms())
    for (const auto& [eb, cb] : q.terms()) out += (ca * cb) * leibniz_monomials(n, ea, eb, order);
  return out;
}

TautPoly push_m(long m, const TautPoly& p) {
  const int n = p.truncation();
  std::vector<Rational> scale(n + 1);
  for (int s = 0; s <= n; ++s) scale[s] = power(Rational(m), s + 2);
  TautPoly out(n);
  for (const auto& [e, c] : p.terms()) {
    Rational f = c;
    for (int s = 0; s <= n; ++s)
      if (e[s]) f *= power(scale[s], e[s]);
    out.add_term(e, f);
  }
  return out;
}

MnSides mn_identity_sides(int n_trunc, long m, long n) {
  if (m == 0 || n == 0) throw PreconditionError("mn-identity requires nonzero m and n");
  const TautPoly c = TautPoly::curve_class(n_trunc);
  const TautPoly cm = push_m(m, c);
  const TautPoly cn = push_m(n, c);
  TautPoly lhs = bracket(cm, cn);
  TautPoly rhs = Rational(-m * n) * (push_m(m + n, c) - cm - cn);
  return {std::move(lhs), std::move(rhs)};
}

bool check_mn_identity(int n_trunc, long m, long n) { return mn_identity_sides(n_trunc, m, n).holds(); }

JordanSides jordan_sides(const TautPoly& x, const TautPoly& y) {
  const TautPoly xx = bracket(x, x);
  return {bracket(bracket(x, y), xx), bracket(x, bracket(y, xx))};
}

std::optional<JordanWitness> jordan_failure_witness(int n) {
  if (n < 4) throw PreconditionError("witness search needs truncation N >= 4");
  for (int s = 0; s <= n; ++s)
    for (int t = 0; t <= n; ++t) {
      TautPoly x = TautPoly::var(n, s);
      TautPoly y = TautPoly::var(n, t);
      auto sides = jordan_sides(x, y);
      if (!(sides.lhs == sides.rhs))
        return JordanWitness{std::move(x), std::move(y), std::move(sides.lhs), std::move(sides.rhs)};
    }
  return std::nullopt;
}

namespace {

std::string monomial_text(const TautPoly::Exponents& e) {
  std::string out;
  for (std::size_t s = 0; s < e.size(); ++s) {
    if (!e[s]) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(s);
    if (e[s] > 1) out += "^" + std::to_string(e[s]);
  }
  return out;
}

}  // namespace

std::string to_string(const TautPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<const std::pair<const TautPoly::Exponents, Rational>*> order;
  for (const auto& term : p.terms()) order.push_back(&term);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    const int wa = TautPoly::s_weight(a->first), wb = TautPoly::s_weight(b->first);
    if (wa != wb) return wa < wb;
    const int fa = TautPoly::factor_count(a->first), fb = TautPoly::factor_count(b->first);
    if (fa != fb) return fa < fb;
    return a->first > b->first;
  });
  std::string out;
  for (const auto* term : order) {
    const Rational& c = term->second;
    const std::string mono = monomial_text(term->first);
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(int n, std::string_view text) : n_(n), text_(text) {}

  TautPoly parse() {
    TautPoly out(n_);
    skip();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out += sign * term();
      first = false;
      skip();
    }
    return out;
  }

 private:
  TautPoly term() {
    Rational coeff(1);
    TautPoly::Exponents e(n_ + 1, 0);
    bool any = false;
    while (true) {
      skip();
      if (at_end()) fail("expected a factor");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= number();
      } else if (peek() == 'x') {
        ++pos_;
        const long s = integer("variable index");
        long k = 1;
        skip();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip();
          k = integer("exponent");
        }
        if (s > n_) {
          coeff = 0;  // truncated variable
        } else {
          e[s] += static_cast<int>(k);
        }
      } else {
        fail("expected a number or a variable x<s>");
      }
      any = true;
      skip();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    TautPoly p(n_);
    p.add_term(e, coeff);
    return p;
  }

  Rational number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      pos_ = start;
      fail("malformed rational literal");
    }
  }

  long integer(const char* what) {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, static_cast<int>(pos_) + 1);
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  int n_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TautPoly parse_taut_poly(int n, std::string_view text) { return PolyParser(n, text).parse(); }

}  // namespace chow
