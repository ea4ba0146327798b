#include "chow/ns_jordan.hpp"

#include <sstream>

#include "chow/errors.hpp"

namespace chow {

Matrix rosati_residual(const Matrix& form, const Matrix& m) { return m.transpose() * form - form * m; }

namespace {

std::string render(const Matrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << to_string(m(i, j));
    out << "]";
  }
  out << "]";
  return out.str();
}

void require_same_polarization(const Endo& a, const Endo& b) {
  if (a.polarization_ptr() != b.polarization_ptr() && !(a.polarization().form() == b.polarization().form()))
    throw ContextMismatch("endomorphisms relative to different polarizations");
}

ExtClass fourier_inverse(const Polarization& pol, const ExtClass& x) {
  ExtClass out = fourier(pol, minus_one_pullback(x));
  return pol.context().g() % 2 ? -out : out;
}

Rational sign_g(const ModelContext& ctx) { return Rational(ctx.g() % 2 ? -1 : 1); }

}  // namespace

// ---------------------------------------------------------------------- Endo

Endo Endo::make(std::shared_ptr<const Polarization> pol, Matrix m) {
  const auto n = static_cast<std::size_t>(pol->context().generator_count());
  if (m.rows() != n || m.cols() != n)
    throw DimensionMismatch("endomorphism must be " + std::to_string(n) + " x " + std::to_string(n));
  const Matrix residual = rosati_residual(pol->form(), m);
  if (!residual.is_zero()) throw RosatiViolation("matrix is not Rosati-symmetric; residual M^T E - E M = " + render(residual));
  return Endo(std::move(pol), std::move(m));
}

Endo Endo::identity(std::shared_ptr<const Polarization> pol) { return scalar(std::move(pol), Rational(1)); }

Endo Endo::scalar(std::shared_ptr<const Polarization> pol, const Rational& s) {
  const auto n = static_cast<std::size_t>(pol->context().generator_count());
  return Endo(std::move(pol), Matrix::scalar(n, s));
}

Endo Endo::inverse() const { return Endo(pol_, chow::inverse(m_)); }

bool Endo::is_invertible() const { return !is_zero(determinant(m_)); }

Endo operator+(const Endo& a, const Endo& b) {
  require_same_polarization(a, b);
  return Endo(a.pol_, a.m_ + b.m_);
}

Endo operator-(const Endo& a, const Endo& b) {
  require_same_polarization(a, b);
  return Endo(a.pol_, a.m_ - b.m_);
}

// Products of symmetric elements need not be symmetric; callers only form
// symmetric combinations (Jordan products, rational functions of one f).
Endo operator*(const Endo& a, const Endo& b) {
  require_same_polarization(a, b);
  return Endo(a.pol_, a.m_ * b.m_);
}

Endo operator*(const Rational& s, const Endo& a) { return Endo(a.pol_, s * a.m_); }

Endo random_symmetric_endo(std::shared_ptr<const Polarization> pol, std::mt19937_64& rng, int bound) {
  const auto n = static_cast<std::size_t>(pol->context().generator_count());
  std::uniform_int_distribution<int> dist(-bound, bound);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      s(i, j) = dist(rng);
      s(j, i) = -s(i, j);
    }
  Matrix m = inverse(pol->form()) * s;
  return Endo::make(std::move(pol), std::move(m));
}

// --------------------------------------------------------------- L and N

ExtClass L_of(const Endo& f) {
  const Polarization& pol = f.polarization();
  return two_form_class(pol.context(), pol.form() * f.matrix());
}

Rational N_of(const Endo& f) { return euler_characteristic(L_of(f)) / f.polarization().chi(); }

// ------------------------------------------------------------ identities

IdentitySides fourier_exp_sides(const Endo& f) {
  const Polarization& pol = f.polarization();
  const Endo minus_inv = Rational(-1) * f.inverse();
  return {fourier(pol, exp_class(L_of(f))), N_of(f) * exp_class(L_of(minus_inv))};
}

bool check_fourier_exp(const Endo& f) { return fourier_exp_sides(f).holds(); }

IdentitySides jordan_product_sides(const Endo& f1, const Endo& f2) {
  require_same_polarization(f1, f2);
  const Polarization& pol = f1.polarization();
  const ModelContext& ctx = pol.context();
  ExtClass lhs = bracket_xi(pol, fourier(pol, L_of(f1)), fourier(pol, L_of(f2)));
  ExtClass rhs = sign_g(ctx) * pol.chi() * fourier(pol, L_of(f1 * f2 + f2 * f1));
  return {std::move(lhs), std::move(rhs)};
}

bool check_jordan_product(const Endo& f1, const Endo& f2) { return jordan_product_sides(f1, f2).holds(); }

IdentitySides generating_series_sides(const Endo& f1, const Endo& f2) {
  require_same_polarization(f1, f2);
  const Polarization& pol = f1.polarization();
  const ModelContext& ctx = pol.context();
  ExtClass lhs = bracket_xi(pol, fourier(pol, exp_class(L_of(f1))), fourier(pol, exp_class(L_of(f2))));
  ExtClass inner = wedge(L_of(f1 * f2 + f2 * f1), exp_class(L_of(f1 + f2)));
  ExtClass rhs = sign_g(ctx) * pol.chi() * fourier(pol, inner);
  return {std::move(lhs), std::move(rhs)};
}

ExtClass deformed_pontryagin(const Polarization& pol, const ExtClass& x, const ExtClass& y, const Rational& t) {
  const ExtClass td = t * pol.cls();
  const ExtClass e_plus = exp_class(td);
  const ExtClass e_minus = exp_class(-td);
  return wedge(e_plus, pontryagin(wedge(e_minus, x), wedge(e_minus, y)));
}

IdentitySides deformed_series_sides(const Endo& f1, const Endo& f2, const Rational& t) {
  require_same_polarization(f1, f2);
  const Polarization& pol = f1.polarization();
  const ModelContext& ctx = pol.context();
  const auto pol_ptr = f1.polarization_ptr();
  const Endo one = Endo::identity(pol_ptr);

  const Endo a1 = one + t * f1;
  const Endo a2 = one + t * f2;
  const Endo f = f1 * a1.inverse() + f2 * a2.inverse();
  const Endo b = one - t * f;
  const Endo g = f * b.inverse();

  ExtClass lhs = fourier_inverse(
      pol, deformed_pontryagin(pol, fourier(pol, exp_class(L_of(f1))), fourier(pol, exp_class(L_of(f2))), t));
  ExtClass rhs = sign_g(ctx) * pol.chi() * N_of(a1) * N_of(a2) * N_of(b) * exp_class(L_of(g));
  return {std::move(lhs), std::move(rhs)};
}

bool check_gen_series(const Endo& f1, const Endo& f2, const Rational& t) {
  return generating_series_sides(f1, f2).holds() && deformed_series_sides(f1, f2, t).holds();
}

ExtClass t_coefficient_by_interpolation(const Polarization& pol, const ExtClass& x, const ExtClass& y,
                                        std::span<const Rational> ts) {
  const ModelContext& ctx = pol.context();
  auto min_degree = [](const ExtClass& c) {
    int k = 1 << 20;
    for (const auto& [m, coeff] : c.terms()) k = std::min(k, degree_of(m));
    return k;
  };
  if (x.is_zero() || y.is_zero()) return ExtClass(ctx);
  // Output degree i + j + 2(a+b+c) - 2g <= 2g bounds the t-degree.
  const int bound = std::max(0, (4 * ctx.g() - min_degree(x) - min_degree(y)) / 2);
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (ts[i] == ts[j]) throw PreconditionError("interpolation points must be distinct");
  if (static_cast<int>(ts.size()) < bound + 1)
    throw PreconditionError("need at least " + std::to_string(bound + 1) + " interpolation points");

  ExtClass coefficient(ctx);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    // Coefficient of t in prod_{j != i} (t - t_j) / (t_i - t_j).
    std::vector<Rational> poly{Rational(1)};
    Rational denom(1);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (j == i) continue;
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= ts[j] * poly[k];
      }
      poly = std::move(next);
      denom *= ts[i] - ts[j];
    }
    const Rational weight = (poly.size() > 1 ? poly[1] : Rational(0)) / denom;
    if (is_zero(weight)) continue;
    coefficient += weight * deformed_pontryagin(pol, x, y, ts[i]);
  }
  return coefficient;
}

std::optional<QuadraticRelation> quadratic_relation(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("quadratic relation of a non-square matrix");
  const std::size_t n = m.rows();
  const Matrix sq = m * m;
  const Matrix id = Matrix::identity(n);
  // Solve alpha vec(M) + beta vec(I) = vec(M^2) exactly.
  Matrix aug(n * n, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      aug(i * n + j, 0) = m(i, j);
      aug(i * n + j, 1) = id(i, j);
      aug(i * n + j, 2) = sq(i, j);
    }
  const RrefResult r = rref(aug);
  QuadraticRelation rel{Rational(0), Rational(0)};
  for (std::size_t row = 0; row < r.pivots.size(); ++row) {
    if (r.pivots[row] == 2) return std::nullopt;
    // A free column keeps coefficient 0.
    (r.pivots[row] == 0 ? rel.alpha : rel.beta) = r.reduced(row, 2);
  }
  return rel;
}

IdentitySides jordan_identity_sides(const Endo& f, const ExtClass& y) {
  const Polarization& pol = f.polarization();
  const ModelContext& ctx = pol.context();
  if (!quadratic_relation(f.matrix())) throw PreconditionError("endomorphism satisfies no quadratic relation over Q");
  if (!y.is_zero() && y.degree() != ctx.generator_count() - 2)
    throw PreconditionError("second argument must lie in H^{2g-2}");
  const ExtClass x = fourier(pol, L_of(f));
  const ExtClass xx = bracket_xi(pol, x, x);
  ExtClass lhs = bracket_xi(pol, bracket_xi(pol, x, y), xx);
  ExtClass rhs = bracket_xi(pol, x, bracket_xi(pol, y, xx));
  return {std::move(lhs), std::move(rhs)};
}

bool check_jordan_identity(const Endo& f, const ExtClass& y) { return jordan_identity_sides(f, y).holds(); }

}  // namespace chow
