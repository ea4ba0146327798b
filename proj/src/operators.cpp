#include "chow/operators.hpp"

#include "chow/errors.hpp"
#include "chow/kernels.hpp"

namespace chow {

LinOp::LinOp(ModelContext ctx, SparseMatrix matrix, std::optional<int> weight)
    : ctx_(ctx), matrix_(std::move(matrix)), weight_(weight) {
  if (matrix_.rows() != ctx_.dim() || matrix_.cols() != ctx_.dim())
    throw DimensionMismatch("operator matrix does not match the model dimension");
}

LinOp LinOp::identity(ModelContext ctx) { return LinOp(ctx, SparseMatrix::identity(ctx.dim()), 0); }

LinOp LinOp::zero(ModelContext ctx) { return LinOp(ctx, SparseMatrix(ctx.dim(), ctx.dim())); }

LinOp LinOp::from_function(ModelContext ctx, const std::function<ExtClass(const ExtClass&)>& fn,
                           std::optional<int> weight) {
  SparseMatrix m = kernels::build_from_columns(ctx.dim(), ctx.dim(), [&](Index j) {
    return fn(ExtClass::basis(ctx, static_cast<Mask>(j))).to_vector();
  });
  return LinOp(ctx, std::move(m), weight);
}

ExtClass LinOp::apply(const ExtClass& x) const {
  if (!(x.context() == ctx_)) throw ContextMismatch("operator applied to a class from another model");
  return ExtClass::from_vector(ctx_, matrix_.apply(x.to_vector()));
}

namespace {

void require_same(const LinOp& a, const LinOp& b) {
  if (!(a.context() == b.context())) throw ContextMismatch("operators on different models");
}

std::optional<int> same_weight(const LinOp& a, const LinOp& b) {
  if (a.weight() && b.weight() && *a.weight() == *b.weight()) return a.weight();
  return std::nullopt;
}

std::optional<int> sum_weight(const LinOp& a, const LinOp& b) {
  if (a.weight() && b.weight()) return *a.weight() + *b.weight();
  return std::nullopt;
}

}  // namespace

LinOp operator+(const LinOp& a, const LinOp& b) {
  require_same(a, b);
  return LinOp(a.ctx_, a.matrix_ + b.matrix_, same_weight(a, b));
}

LinOp operator-(const LinOp& a, const LinOp& b) {
  require_same(a, b);
  return LinOp(a.ctx_, a.matrix_ - b.matrix_, same_weight(a, b));
}

LinOp operator*(const LinOp& a, const LinOp& b) {
  require_same(a, b);
  return LinOp(a.ctx_, a.matrix_ * b.matrix_, sum_weight(a, b));
}

LinOp operator*(const Rational& s, const LinOp& a) { return LinOp(a.ctx_, s * a.matrix_, a.weight_); }

LinOp commutator(const LinOp& a, const LinOp& b) {
  require_same(a, b);
  return LinOp(a.context(), commutator(a.matrix(), b.matrix()), sum_weight(a, b));
}

LinOp ad_power(const LinOp& x, const LinOp& y, int n) {
  LinOp out = y;
  for (int i = 0; i < n && !out.is_zero(); ++i) out = commutator(x, out);
  return out;
}

LinOp op_mul_cup(const ExtClass& a) {
  const auto k = a.degree();
  return LinOp::from_function(a.context(), [&](const ExtClass& x) { return wedge(a, x); }, k);
}

LinOp op_mul_pontryagin(const ExtClass& a) {
  const auto k = a.degree();
  std::optional<int> w;
  if (k) w = *k - a.context().generator_count();
  return LinOp::from_function(a.context(), [&](const ExtClass& x) { return pontryagin(a, x); }, w);
}

LinOp grading_operator(const ModelContext& ctx) {
  std::vector<SparseVec> rows(ctx.dim());
  for (Mask m = 0; m < ctx.dim(); ++m) rows[m] = SparseVec::unit(m, Rational(degree_of(m) - ctx.g()));
  return LinOp(ctx, SparseMatrix::from_rows(ctx.dim(), ctx.dim(), std::move(rows)), 0);
}

LinOp minus_one_op(const ModelContext& ctx) {
  std::vector<SparseVec> rows(ctx.dim());
  for (Mask m = 0; m < ctx.dim(); ++m) rows[m] = SparseVec::unit(m, Rational(degree_of(m) % 2 ? -1 : 1));
  return LinOp(ctx, SparseMatrix::from_rows(ctx.dim(), ctx.dim(), std::move(rows)), 0);
}

LinOp pullback_op(const ModelContext& ctx, const Matrix& m) {
  return LinOp::from_function(ctx, [&](const ExtClass& x) { return pullback_linear(m, x); }, 0);
}

LinOp pushforward_op(const ModelContext& ctx, const Matrix& m) {
  return LinOp::from_function(ctx, [&](const ExtClass& x) { return pushforward_linear(m, x); }, 0);
}

Sl2Triple sl2_of(const Polarization& pol) {
  const ModelContext& ctx = pol.context();
  const int g = ctx.g();
  ExtClass power = ExtClass::unit(ctx);
  for (int i = 0; i < g - 1; ++i) power = wedge(power, pol.cls());
  power *= 1 / (factorial(g - 1) * pol.chi());
  LinOp e = op_mul_cup(pol.cls());
  LinOp f = op_mul_pontryagin(power);
  return {std::move(e), std::move(f), grading_operator(ctx)};
}

LinOp exp_nilpotent(const LinOp& t) {
  const ModelContext& ctx = t.context();
  LinOp sum = LinOp::identity(ctx);
  LinOp power = LinOp::identity(ctx);
  for (std::size_t k = 1; k <= ctx.dim(); ++k) {
    power = t * power;
    if (power.is_zero()) return LinOp(ctx, sum.matrix(), t.weight() && *t.weight() == 0 ? t.weight() : std::nullopt);
    sum = sum + (Rational(1) / factorial(static_cast<long>(k))) * power;
  }
  throw NotNilpotent("operator is not nilpotent within dim steps");
}

LinOp fourier_op(const Polarization& pol) {
  return LinOp::from_function(pol.context(), [&](const ExtClass& x) { return fourier(pol, x); });
}

LinOp fourier_inverse_op(const Polarization& pol) {
  const ModelContext& ctx = pol.context();
  LinOp inv = fourier_op(pol) * minus_one_op(ctx);
  return ctx.g() % 2 ? Rational(-1) * inv : inv;
}

namespace {

int nested_commutator_order(const LinOp& t, Product product, const std::vector<Mask>& probe_masks) {
  const ModelContext& ctx = t.context();
  const std::vector<Mask> even = ctx.even_basis();
  // Even columns must land in even rows.
  for (Mask i = 0; i < ctx.dim(); ++i) {
    if (degree_of(i) % 2 == 0) continue;
    for (const auto& e : t.matrix().row(i).entries())
      if (degree_of(e.index) % 2 == 0)
        throw PreconditionError("operator does not preserve the even subalgebra");
  }
  std::vector<Index> keep(even.begin(), even.end());
  const SparseMatrix restricted = t.matrix().restrict_to(keep);
  if (restricted.is_zero()) return -1;

  std::vector<SparseMatrix> probes;
  probes.reserve(probe_masks.size());
  for (Mask b : probe_masks) {
    const ExtClass cls = ExtClass::basis(ctx, b);
    const LinOp mult = product == Product::cup ? op_mul_cup(cls) : op_mul_pontryagin(cls);
    probes.push_back(mult.matrix().restrict_to(keep));
  }

  const std::size_t m = keep.size();
  std::vector<SparseMatrix> level{restricted};
  for (int order = 0; order <= static_cast<int>(4 * m); ++order) {
    // Span of all (order+1)-fold nested commutators; zero commutators are dropped.
    Subspace span(m * m);
    std::vector<SparseMatrix> next;
    for (const auto& x : level) {
      for (const auto& p : probes) {
        SparseMatrix c = commutator(x, p);
        if (c.is_zero()) continue;
        if (span.insert(c.flatten())) next.push_back(std::move(c));
      }
    }
    if (next.empty()) return order;
    level = std::move(next);
  }
  throw PreconditionError("nested commutators did not vanish; operator has no finite order");
}

}  // namespace

int diff_order(const LinOp& t, Product product) {
  const ModelContext& ctx = t.context();
  // H^2 generates the even classes under cup, H^{2g-2} under Pontryagin, and
  // [D, ab] = [D, a] b + a [D, b] carries the vanishing from generators to products.
  const int k = product == Product::cup ? 2 : ctx.generator_count() - 2;
  return nested_commutator_order(t, product, ctx.basis_of_degree(k));
}

namespace reference {

int diff_order_all_probes(const LinOp& t, Product product) {
  return nested_commutator_order(t, product, t.context().even_basis());
}

}  // namespace reference

LowestWeightCheck check_sl2_lowest_weight(const Polarization& pol, const ExtClass& a) {
  if (!(a.context() == pol.context())) throw ContextMismatch("class and polarization from different models");
  if (a.is_zero()) return {true, Rational(0)};
  const auto k = a.degree();
  if (!k || *k % 2) throw PreconditionError("lowest-weight check needs a homogeneous even class");
  const ModelContext& ctx = pol.context();
  const LinOp e = op_mul_cup(pol.cls());
  const LinOp raised = ad_power(e, op_mul_pontryagin(a), ctx.generator_count() - *k);
  const LinOp target = op_mul_cup(fourier(pol, a));

  const auto c = proportionality(target.matrix(), raised.matrix());
  if (!c) return {false, Rational(0)};
  return {!is_zero(*c), *c};
}

std::optional<Rational> proportionality(const SparseMatrix& target, const SparseMatrix& base) {
  if (target.rows() != base.rows() || target.cols() != base.cols())
    throw DimensionMismatch("proportionality of operators of different shapes");
  for (std::size_t i = 0; i < base.rows(); ++i) {
    if (base.row(i).empty()) continue;
    const Entry& first = base.row(i).entries().front();
    const Rational c = target.at(i, first.index) / first.value;
    if (c * base == target) return c;
    return std::nullopt;
  }
  if (target.is_zero()) return Rational(0);
  return std::nullopt;
}

LinOp bracket_operator(const Polarization& pol, const ExtClass& x) {
  return LinOp::from_function(pol.context(), [&](const ExtClass& y) { return bracket_xi(pol, x, y); });
}

}  // namespace chow
