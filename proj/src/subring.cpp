#include "chow/subring.hpp"

#include "chow/errors.hpp"

namespace chow {

namespace {

ExtClass as_class(const ModelContext& ctx, const SparseVec& v) { return ExtClass::from_vector(ctx, v); }

void require_ambient(const ModelContext& ctx, const Subspace& s) {
  if (s.ambient_dim() != ctx.dim()) throw DimensionMismatch("subspace does not live in the model algebra");
}

ExtClass multiply(const ExtClass& a, const ExtClass& b, Product product) {
  return product == Product::cup ? wedge(a, b) : pontryagin(a, b);
}

// Smallest subspace containing `start` and closed under the product. Only
// pairs involving a newly added vector are formed in each round.
Subspace product_closure(const ModelContext& ctx, Subspace start, Product product) {
  std::vector<ExtClass> all;
  for (const auto& v : start.basis()) all.push_back(as_class(ctx, v));
  std::vector<ExtClass> fresh = all;
  while (!fresh.empty()) {
    std::vector<ExtClass> next;
    for (const auto& a : fresh)
      for (const auto& b : all) {
        for (const ExtClass& c : {multiply(a, b, product), multiply(b, a, product)}) {
          if (start.insert(c.to_vector())) next.push_back(c);
        }
      }
    all.insert(all.end(), next.begin(), next.end());
    fresh = std::move(next);
  }
  return start;
}

bool product_closed(const ModelContext& ctx, const Subspace& s, Product product, std::string* why) {
  const auto& basis = s.basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const ExtClass c = multiply(as_class(ctx, basis[i]), as_class(ctx, basis[j]), product);
      if (!s.contains(c.to_vector())) {
        if (why)
          *why = std::string(product == Product::cup ? "cup" : "Pontryagin") + " product of basis vectors " +
                 std::to_string(i) + " and " + std::to_string(j) + " leaves the subspace";
        return false;
      }
    }
  return true;
}

}  // namespace

Subspace degree_subspace(const ModelContext& ctx, int k) {
  Subspace s(ctx.dim());
  if (k < 0 || k > ctx.generator_count()) return s;
  for (Mask m : ctx.basis_of_degree(k)) s.insert(SparseVec::unit(m, Rational(1)));
  return s;
}

Subspace even_subspace(const ModelContext& ctx) {
  Subspace s(ctx.dim());
  for (Mask m : ctx.even_basis()) s.insert(SparseVec::unit(m, Rational(1)));
  return s;
}

bool is_invariant(const Subspace& s, const SparseMatrix& op) {
  for (const auto& v : s.basis())
    if (!s.contains(op.apply(v))) return false;
  return true;
}

Subspace product_span(const ModelContext& ctx, const Subspace& a, const Subspace& b, Product product) {
  require_ambient(ctx, a);
  require_ambient(ctx, b);
  Subspace out(ctx.dim());
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) out.insert(multiply(as_class(ctx, u), as_class(ctx, v), product).to_vector());
  return out;
}

SubringState pontryagin_subalgebra(const ModelContext& ctx, const Subspace& w) {
  require_ambient(ctx, w);
  Subspace start = w;
  start.insert(ExtClass::point(ctx).to_vector());
  SubringState out{ctx, product_closure(ctx, std::move(start), Product::pontryagin), {}, {}, {}};
  out.pontryagin_closed = product_closed(ctx, out.space, Product::pontryagin, nullptr);
  return out;
}

Subspace cup_subalgebra(const ModelContext& ctx, const Subspace& w) {
  require_ambient(ctx, w);
  Subspace start = w;
  start.insert(ExtClass::unit(ctx).to_vector());
  return product_closure(ctx, std::move(start), Product::cup);
}

SubringState qt_ring(const ModelContext& ctx) {
  return pontryagin_subalgebra(ctx, degree_subspace(ctx, ctx.generator_count() - 2));
}

bool StabilityReport::all() const {
  if (!cup_closed || !pontryagin_closed) return false;
  for (const auto& [name, ok] : fourier)
    if (!ok) return false;
  return true;
}

StabilityReport check_stability(SubringState& s, std::span<const NamedPolarization> pols) {
  const ModelContext& ctx = s.ctx;
  require_ambient(ctx, s.space);
  StabilityReport report;
  std::string why;
  report.cup_closed = product_closed(ctx, s.space, Product::cup, &why);
  if (!report.cup_closed && !report.counterexample) report.counterexample = why;
  report.pontryagin_closed = product_closed(ctx, s.space, Product::pontryagin, &why);
  if (!report.pontryagin_closed && !report.counterexample) report.counterexample = why;
  for (const auto& p : pols) {
    if (!(p.pol->context() == ctx)) throw ContextMismatch("polarization '" + p.name + "' is on another model");
    const LinOp f = fourier_op(*p.pol);
    bool ok = true;
    const auto& basis = s.space.basis();
    for (std::size_t i = 0; i < basis.size() && ok; ++i) {
      if (!s.space.contains(f.matrix().apply(basis[i]))) {
        ok = false;
        if (!report.counterexample)
          report.counterexample = "F_" + p.name + " moves basis vector " + std::to_string(i) + " out of the subspace";
      }
    }
    report.fourier.emplace_back(p.name, ok);
    s.fourier_stable[p.name] = ok;
  }
  s.cup_closed = report.cup_closed;
  s.pontryagin_closed = report.pontryagin_closed;
  return report;
}

// --------------------------------------------------------------- GradedLie

std::size_t GradedLie::dimension() const {
  std::size_t n = 0;
  for (const auto& [w, b] : parts_) n += b.size();
  return n;
}

std::vector<SparseMatrix> GradedLie::negative() const {
  std::vector<SparseMatrix> out;
  for (const auto& [w, b] : parts_)
    if (w < 0) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<SparseMatrix> GradedLie::zero() const {
  auto it = parts_.find(0);
  return it == parts_.end() ? std::vector<SparseMatrix>{} : it->second;
}

std::vector<SparseMatrix> GradedLie::positive() const {
  std::vector<SparseMatrix> out;
  for (const auto& [w, b] : parts_)
    if (w > 0) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<SparseMatrix> GradedLie::non_negative() const {
  std::vector<SparseMatrix> out = zero();
  const auto pos = positive();
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

void GradedLie::add_component(int weight, std::vector<SparseMatrix> basis) {
  for (const auto& m : basis) {
    const auto w = operator_weight(ctx_, m);
    if (!w || *w != weight) throw PreconditionError("operator is not homogeneous of weight " + std::to_string(weight));
  }
  auto& part = parts_[weight];
  part.insert(part.end(), std::make_move_iterator(basis.begin()), std::make_move_iterator(basis.end()));
}

std::optional<int> operator_weight(const ModelContext& ctx, const SparseMatrix& m) {
  if (m.rows() != ctx.dim() || m.cols() != ctx.dim()) throw DimensionMismatch("operator does not act on the model");
  std::optional<int> w;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& e : m.row(i).entries()) {
      const int d = degree_of(static_cast<Mask>(i)) - degree_of(e.index);
      if (w && *w != d) return std::nullopt;
      w = d;
    }
  return w;
}

GradedLie build_lie(const ModelContext& ctx, std::span<const NamedPolarization> pols) {
  GradedLie lie(ctx);
  if (pols.empty()) return lie;
  std::vector<SparseMatrix> gens;
  gens.push_back(grading_operator(ctx).matrix());
  for (const auto& p : pols) {
    if (!(p.pol->context() == ctx)) throw ContextMismatch("polarization '" + p.name + "' is on another model");
    Sl2Triple t = sl2_of(*p.pol);
    gens.push_back(t.e.matrix());
    gens.push_back(t.f.matrix());
  }
  const std::vector<SparseMatrix> basis = lie_closure(gens);

  // ad(h) multiplies the (i, j) entry by deg i - deg j, so the weight pieces
  // of each basis element are again in the algebra.
  const std::size_t n = ctx.dim();
  std::map<int, std::vector<std::vector<SparseVec>>> pieces;
  for (const auto& m : basis) {
    std::map<int, std::vector<SparseVec>> rows;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& e : m.row(i).entries()) {
        const int d = degree_of(static_cast<Mask>(i)) - degree_of(e.index);
        auto& r = rows[d];
        if (r.empty()) r.resize(n);
        r[i] = r[i] + SparseVec::unit(e.index, e.value);
      }
    for (auto& [d, r] : rows) pieces[d].push_back(std::move(r));
  }
  for (auto& [d, list] : pieces) {
    Subspace span(n * n);
    std::vector<SparseMatrix> independent;
    for (auto& rows : list) {
      SparseMatrix piece = SparseMatrix::from_rows(n, n, std::move(rows));
      if (span.insert(piece.flatten())) independent.push_back(std::move(piece));
    }
    lie.add_component(d, std::move(independent));
  }
  return lie;
}

SaturationResult saturate(const Subspace& v, const GradedLie& lie) {
  const ModelContext& ctx = lie.context();
  require_ambient(ctx, v);
  if (!even_subspace(ctx).contains(v)) throw PreconditionError("saturation input must consist of even classes");
  const std::vector<SparseMatrix> up = lie.non_negative();
  const std::vector<SparseMatrix> pos = lie.positive();

  SaturationResult out{closure(v, up), 0};
  while (true) {
    const Subspace square = product_span(ctx, out.space, out.space, Product::pontryagin);
    Subspace hits(ctx.dim());
    for (const auto& x : pos)
      for (const auto& w : square.basis()) hits.insert(x.apply(w));
    const Subspace added = closure(hits, up);
    const Subspace next = subspace_join(out.space, added);
    if (next == out.space) return out;
    out.space = next;
    ++out.iterations;
  }
}

// ------------------------------------------------------------------ Pon-lem

bool PonLemReport::hypotheses_hold() const {
  if (!bracket_closed || !d_stable) return false;
  for (const auto& [m, ok] : multiplication_stable)
    if (!ok) return false;
  return true;
}

PonLemReport check_pon_lem(const Subspace& v, const NamedPolarization& p) {
  const Polarization& pol = *p.pol;
  const ModelContext& ctx = pol.context();
  require_ambient(ctx, v);
  const int top = ctx.generator_count();
  const Subspace allowed = subspace_join(degree_subspace(ctx, top), degree_subspace(ctx, top - 2));
  if (!allowed.contains(v)) throw PreconditionError("V must lie in H^{2g} + H^{2g-2}");

  PonLemReport report;
  report.bracket_closed = true;
  const auto& basis = v.basis();
  for (std::size_t i = 0; i < basis.size() && report.bracket_closed; ++i)
    for (std::size_t j = i; j < basis.size() && report.bracket_closed; ++j)
      report.bracket_closed = v.contains(bracket_xi(pol, as_class(ctx, basis[i]), as_class(ctx, basis[j])).to_vector());

  report.d_stable = is_invariant(v, op_mul_cup(pol.cls()).matrix());
  const std::size_t n = static_cast<std::size_t>(ctx.generator_count());
  for (long m : {-1L, 2L, 3L})
    report.multiplication_stable[m] = is_invariant(v, pullback_op(ctx, Matrix::scalar(n, Rational(m))).matrix());
  if (!report.hypotheses_hold()) return report;

  Subspace tilde = v;
  ExtClass power = ExtClass::unit(ctx);
  for (int i = 0; i < ctx.g() - 1; ++i) power = wedge(power, pol.cls());
  tilde.insert(power.to_vector());
  SubringState ring = pontryagin_subalgebra(ctx, tilde);
  const NamedPolarization only[] = {p};
  report.conclusion = check_stability(ring, only);
  report.ring = std::move(ring);
  return report;
}

}  // namespace chow
