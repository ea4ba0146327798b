#include "chow/exterior.hpp"

#include <bit>

#include "chow/errors.hpp"

namespace chow {

int merge_sign(Mask lhs, Mask rhs) {
  if (lhs & rhs) return 0;
  int inversions = 0;
  for (Mask r = rhs; r; r &= r - 1) {
    const int j = std::countr_zero(r);
    inversions += std::popcount(static_cast<Mask>(static_cast<std::uint64_t>(lhs) >> (j + 1)));
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {

// Sign of the ordered product of single generators `bits`, relative to the
// ascending wedge of their union; 0 on repetition.
int sequence_sign(const std::vector<int>& bits, Mask* out_mask) {
  Mask cur = 0;
  int sign = 1;
  for (int b : bits) {
    const Mask bit = Mask{1} << b;
    const int s = merge_sign(cur, bit);
    if (s == 0) return 0;
    sign *= s;
    cur |= bit;
  }
  if (out_mask) *out_mask = cur;
  return sign;
}

void accumulate(std::map<Mask, Rational>& terms, Mask m, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) terms.erase(it);
  }
}

}  // namespace

// ------------------------------------------------------------- ModelContext

ModelContext::ModelContext(int g) : g_(g) {
  std::vector<int> order;
  for (int i = 0; i < g; ++i) {
    order.push_back(i);
    order.push_back(g + i);
  }
  orientation_sign_ = sequence_sign(order, nullptr);
}

ModelContext ModelContext::make(int g) {
  if (g < 1 || g > 6) throw PreconditionError("g must satisfy 1 <= g <= 6, got " + std::to_string(g));
  return ModelContext(g);
}

std::string ModelContext::generator_name(int index) const {
  if (index < 0 || index >= 2 * g_) throw PreconditionError("generator index out of range");
  return index < g_ ? "a" + std::to_string(index + 1) : "b" + std::to_string(index - g_ + 1);
}

std::optional<int> ModelContext::generator_index(const std::string& name) const {
  if (name.size() < 2 || (name[0] != 'a' && name[0] != 'b')) return std::nullopt;
  int k = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    k = 10 * k + (name[i] - '0');
    if (k > 64) return std::nullopt;
  }
  if (name[1] == '0' || k < 1 || k > g_) return std::nullopt;
  return name[0] == 'a' ? k - 1 : g_ + k - 1;
}

std::vector<Mask> ModelContext::basis_of_degree(int k) const {
  std::vector<Mask> out;
  for (Mask m = 0; m < dim(); ++m)
    if (degree_of(m) == k) out.push_back(m);
  return out;
}

std::vector<Mask> ModelContext::even_basis() const {
  std::vector<Mask> out;
  for (Mask m = 0; m < dim(); ++m)
    if (degree_of(m) % 2 == 0) out.push_back(m);
  return out;
}

// ------------------------------------------------------------------ ExtClass

ExtClass ExtClass::unit(ModelContext ctx) { return basis(ctx, 0); }

ExtClass ExtClass::point(ModelContext ctx) { return basis(ctx, ctx.top_mask(), Rational(ctx.orientation_sign())); }

ExtClass ExtClass::generator(ModelContext ctx, int index) {
  if (index < 0 || index >= ctx.generator_count()) throw PreconditionError("generator index out of range");
  return basis(ctx, Mask{1} << index);
}

ExtClass ExtClass::basis(ModelContext ctx, Mask mask, Rational coeff) {
  if (mask >= ctx.dim()) throw DimensionMismatch("basis mask outside the model");
  ExtClass x(ctx);
  x.add_term(mask, coeff);
  return x;
}

ExtClass ExtClass::from_vector(ModelContext ctx, const SparseVec& v) {
  if (v.extent() > ctx.dim()) throw DimensionMismatch("vector longer than the model algebra");
  ExtClass x(ctx);
  for (const auto& e : v.entries()) x.terms_.emplace(e.index, e.value);
  return x;
}

Rational ExtClass::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ExtClass::add_term(Mask m, const Rational& c) {
  if (m >= ctx_.dim()) throw DimensionMismatch("basis mask outside the model");
  accumulate(terms_, m, c);
}

bool ExtClass::is_even() const {
  for (const auto& [m, c] : terms_)
    if (degree_of(m) % 2) return false;
  return true;
}

std::optional<int> ExtClass::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int k = degree_of(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (degree_of(m) != k) return std::nullopt;
  return k;
}

ExtClass ExtClass::graded_part(int k) const {
  ExtClass out(ctx_);
  for (const auto& [m, c] : terms_)
    if (degree_of(m) == k) out.terms_.emplace(m, c);
  return out;
}

SparseVec ExtClass::to_vector() const { return SparseVec::from_map(std::map<Index, Rational>(terms_.begin(), terms_.end())); }

void ExtClass::require_same_context(const ExtClass& other) const {
  if (!(ctx_ == other.ctx_))
    throw ContextMismatch("classes from models of dimension g=" + std::to_string(ctx_.g()) + " and g=" +
                          std::to_string(other.ctx_.g()));
}

ExtClass& ExtClass::operator+=(const ExtClass& other) {
  require_same_context(other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
  return *this;
}

ExtClass& ExtClass::operator-=(const ExtClass& other) {
  require_same_context(other);
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
  return *this;
}

ExtClass& ExtClass::operator*=(const Rational& s) {
  if (chow::is_zero(s)) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= s;
  }
  return *this;
}

// -------------------------------------------------------------- ProductClass

void ProductClass::add_term(Mask m, const Rational& c) { accumulate(terms_, m, c); }

Rational ProductClass::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

ProductClass& ProductClass::operator+=(const ProductClass& other) {
  if (!(ctx_ == other.ctx_)) throw ContextMismatch("product classes from different models");
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
  return *this;
}

ProductClass& ProductClass::operator-=(const ProductClass& other) {
  if (!(ctx_ == other.ctx_)) throw ContextMismatch("product classes from different models");
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
  return *this;
}

ProductClass& ProductClass::operator*=(const Rational& s) {
  if (chow::is_zero(s)) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= s;
  }
  return *this;
}

// -------------------------------------------------------- basic operations

ExtClass wedge(const ExtClass& x, const ExtClass& y) {
  if (!(x.context() == y.context())) throw ContextMismatch("wedge of classes from different models");
  ExtClass out(x.context());
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      const int s = merge_sign(mx, my);
      if (s != 0) out.add_term(mx | my, s * cx * cy);
    }
  }
  return out;
}

Rational integrate(const ExtClass& x) {
  return x.coeff(x.context().top_mask()) * x.context().orientation_sign();
}

Rational poincare_pairing(const ExtClass& x, const ExtClass& y) { return integrate(wedge(x, y)); }

ExtClass two_form_class(ModelContext ctx, const Matrix& form) {
  const auto n = static_cast<std::size_t>(ctx.generator_count());
  if (form.rows() != n || form.cols() != n) throw DimensionMismatch("two-form matrix must be 2g x 2g");
  ExtClass out(ctx);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.add_term((Mask{1} << i) | (Mask{1} << j), form(i, j));
  return out;
}

Rational euler_characteristic(const ExtClass& c) {
  const int g = c.context().g();
  ExtClass power = ExtClass::unit(c.context());
  for (int i = 0; i < g; ++i) power = wedge(power, c);
  return integrate(power) / factorial(g);
}

ExtClass pullback_linear(const Matrix& m, const ExtClass& x) {
  const ModelContext& ctx = x.context();
  const auto n = static_cast<std::size_t>(ctx.generator_count());
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("pullback matrix must be 2g x 2g");
  std::vector<ExtClass> images;
  images.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ExtClass img(ctx);
    for (std::size_t i = 0; i < n; ++i) img.add_term(Mask{1} << i, m(i, j));
    images.push_back(std::move(img));
  }
  ExtClass out(ctx);
  for (const auto& [mask, c] : x.terms()) {
    ExtClass term = ExtClass::unit(ctx);
    for (Mask r = mask; r; r &= r - 1) term = wedge(term, images[std::countr_zero(r)]);
    out += c * term;
  }
  return out;
}

namespace {

// det of the minor of m with rows `row_mask` and columns `col_mask` (same popcount).
Rational minor_determinant(const Matrix& m, Mask row_mask, Mask col_mask) {
  std::vector<std::size_t> rows, cols;
  for (Mask r = row_mask; r; r &= r - 1) rows.push_back(std::countr_zero(r));
  for (Mask c = col_mask; c; c &= c - 1) cols.push_back(std::countr_zero(c));
  if (rows.empty()) return Rational(1);
  Matrix sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows[i], cols[j]);
  return determinant(sub);
}

int pairing_sign(const ModelContext& ctx, Mask u) {
  return merge_sign(u, ctx.top_mask() ^ u) * ctx.orientation_sign();
}

}  // namespace

ExtClass pushforward_linear(const Matrix& m, const ExtClass& x) {
  const ModelContext& ctx = x.context();
  const auto n = static_cast<std::size_t>(ctx.generator_count());
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("pushforward matrix must be 2g x 2g");
  const Mask top = ctx.top_mask();
  ExtClass out(ctx);
  // c_u = P[comp X][comp u] * sigma(X) / sigma(u), P[T][S] = coefficient of T in pull(S) = det M[T, S].
  for (const auto& [mx, cx] : x.terms()) {
    const int sx = pairing_sign(ctx, mx);
    for (Mask u : ctx.basis_of_degree(degree_of(mx))) {
      const Rational p = minor_determinant(m, top ^ mx, top ^ u);
      if (is_zero(p)) continue;
      out.add_term(u, cx * p * sx * pairing_sign(ctx, u));
    }
  }
  return out;
}

ExtClass minus_one_pullback(const ExtClass& x) {
  ExtClass out(x.context());
  for (const auto& [m, c] : x.terms()) out.add_term(m, degree_of(m) % 2 ? Rational(-c) : c);
  return out;
}

// ----------------------------------------------------------- Pontryagin

std::pair<Mask, int> pontryagin_basis(const ModelContext& ctx, Mask s, Mask t) {
  const Mask top = ctx.top_mask();
  if ((s | t) != top) return {0, 0};
  const int shift = ctx.generator_count();
  const Mask u = s & t;
  const Mask comp_s = top ^ s;
  const Mask comp_t = top ^ t;
  // The only term of m^*(comp u) pairing nontrivially with s (x) t puts
  // comp s in the first factor and comp t in the second, in ascending order.
  std::vector<int> seq;
  for (Mask r = comp_s | comp_t; r; r &= r - 1) {
    const int i = std::countr_zero(r);
    seq.push_back((comp_s >> i) & 1 ? i : i + shift);
  }
  const int s_seq = sequence_sign(seq, nullptr);
  const int s_pair = merge_sign(s | (t << shift), comp_s | (comp_t << shift));
  return {u, s_seq * s_pair * pairing_sign(ctx, u)};
}

ExtClass pontryagin(const ExtClass& x, const ExtClass& y) {
  if (!(x.context() == y.context())) throw ContextMismatch("Pontryagin product of classes from different models");
  const ModelContext& ctx = x.context();
  ExtClass out(ctx);
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      const auto [u, sign] = pontryagin_basis(ctx, mx, my);
      if (sign != 0) out.add_term(u, sign * cx * cy);
    }
  }
  return out;
}

// ----------------------------------------------------------- product model

ProductClass pull_first(const ExtClass& x) {
  ProductClass out(x.context());
  for (const auto& [m, c] : x.terms()) out.add_term(m, c);
  return out;
}

ProductClass pull_second(const ExtClass& x) {
  ProductClass out(x.context());
  const int shift = x.context().generator_count();
  for (const auto& [m, c] : x.terms()) out.add_term(m << shift, c);
  return out;
}

ProductClass product_wedge(const ProductClass& x, const ProductClass& y) {
  if (!(x.context() == y.context())) throw ContextMismatch("product classes from different models");
  ProductClass out(x.context());
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      const int s = merge_sign(mx, my);
      if (s != 0) out.add_term(mx | my, s * cx * cy);
    }
  }
  return out;
}

ProductClass pull_sum(const ExtClass& x) {
  const ModelContext& ctx = x.context();
  const int shift = ctx.generator_count();
  ProductClass out(ctx);
  for (const auto& [m, c] : x.terms()) {
    ProductClass term(ctx);
    term.add_term(0, c);
    for (Mask r = m; r; r &= r - 1) {
      const int i = std::countr_zero(r);
      ProductClass lin(ctx);
      lin.add_term(Mask{1} << i, Rational(1));
      lin.add_term(Mask{1} << (i + shift), Rational(1));
      term = product_wedge(term, lin);
    }
    out += term;
  }
  return out;
}

Rational product_integrate(const ProductClass& z) {
  // integrate(p1^*x . p2^*y) = integrate(x) integrate(y); the full mask is
  // top (x) top, whose integral is orientation_sign^2 = 1.
  const ModelContext& ctx = z.context();
  const Mask full = ctx.top_mask() | (ctx.top_mask() << ctx.generator_count());
  return z.coeff(full);
}

ExtClass push_sum(const ProductClass& z) {
  const ModelContext& ctx = z.context();
  const int shift = ctx.generator_count();
  const Mask low = ctx.top_mask();
  ExtClass out(ctx);
  for (const auto& [m, c] : z.terms()) {
    const auto [u, sign] = pontryagin_basis(ctx, m & low, m >> shift);
    if (sign != 0) out.add_term(u, sign * c);
  }
  return out;
}

ProductClass biext_class(const Polarization& pol) {
  return pull_sum(pol.cls()) - pull_first(pol.cls()) - pull_second(pol.cls());
}

ExtClass bracket_xi(const Polarization& pol, const ExtClass& x, const ExtClass& y) {
  if (!(x.context() == pol.context()) || !(y.context() == pol.context()))
    throw ContextMismatch("bracket arguments and polarization come from different models");
  return push_sum(product_wedge(pol.biext(), product_wedge(pull_first(x), pull_second(y))));
}

// --------------------------------------------------------------- exp, Fourier

ExtClass exp_class(const ExtClass& x) {
  for (const auto& [m, c] : x.terms()) {
    if (m == 0) throw PreconditionError("exp of a class with nonzero degree-0 part");
    if (degree_of(m) % 2) throw PreconditionError("exp of a class with odd-degree components");
  }
  const ModelContext& ctx = x.context();
  ExtClass sum = ExtClass::unit(ctx);
  ExtClass power = ExtClass::unit(ctx);
  for (int k = 1; k <= ctx.g(); ++k) {
    power = wedge(power, x);
    if (power.is_zero()) break;
    sum += Rational(1) / factorial(k) * power;
  }
  return sum;
}

Polarization::Polarization(ModelContext ctx, Matrix form)
    : ctx_(ctx),
      form_(std::move(form)),
      d_(ctx),
      exp_d_(ctx),
      exp_minus_d_(ctx),
      biext_(ctx) {
  const auto n = static_cast<std::size_t>(ctx.generator_count());
  if (form_.rows() != n || form_.cols() != n)
    throw PreconditionError("polarization form must be " + std::to_string(n) + " x " + std::to_string(n));
  if (!form_.is_antisymmetric()) throw PreconditionError("polarization form is not antisymmetric");
  d_ = two_form_class(ctx, form_);
  chi_ = euler_characteristic(d_);
  if (is_zero(chi_)) throw DegeneratePolarization("polarization has chi(d) = 0");
  exp_d_ = exp_class(d_);
  exp_minus_d_ = exp_class(-d_);
  biext_ = biext_class(*this);
}

Polarization Polarization::standard(ModelContext ctx) {
  const int g = ctx.g();
  Matrix e(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    e(i, g + i) = 1;
    e(g + i, i) = -1;
  }
  return Polarization(ctx, std::move(e));
}

ExtClass fourier(const Polarization& pol, const ExtClass& x) {
  if (!(x.context() == pol.context())) throw ContextMismatch("Fourier transform across models");
  ExtClass inner = wedge(pol.exp_minus_d(), minus_one_pullback(x));
  ExtClass out = wedge(pol.exp_minus_d(), pontryagin(inner, pol.exp_d()));
  out *= 1 / pol.chi();
  return out;
}

// ------------------------------------------------------------------ oracles

namespace reference {

ExtClass pontryagin_adjoint(const ExtClass& x, const ExtClass& y) {
  const ModelContext& ctx = x.context();
  const ProductClass z = product_wedge(pull_first(x), pull_second(y));
  ExtClass out(ctx);
  for (Mask u = 0; u < ctx.dim(); ++u) {
    const ExtClass w = ExtClass::basis(ctx, ctx.top_mask() ^ u);
    const Rational lhs = product_integrate(product_wedge(z, pull_sum(w)));
    if (is_zero(lhs)) continue;
    out.add_term(u, lhs / poincare_pairing(ExtClass::basis(ctx, u), w));
  }
  return out;
}

ExtClass pushforward_adjoint(const Matrix& m, const ExtClass& x) {
  const ModelContext& ctx = x.context();
  ExtClass out(ctx);
  for (Mask u = 0; u < ctx.dim(); ++u) {
    const ExtClass w = ExtClass::basis(ctx, ctx.top_mask() ^ u);
    const Rational lhs = poincare_pairing(x, pullback_linear(m, w));
    if (is_zero(lhs)) continue;
    out.add_term(u, lhs / poincare_pairing(ExtClass::basis(ctx, u), w));
  }
  return out;
}

}  // namespace reference

}  // namespace chow
