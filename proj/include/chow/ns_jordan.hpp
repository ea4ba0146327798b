#pragma once

#include <memory>
#include <optional>
#include <random>
#include <span>

#include "chow/exterior.hpp"
#include "chow/linalg.hpp"

// Neron-Severi classes as Rosati-symmetric endomorphisms of H^1, and the
// Jordan structure that the bracket induces on their Fourier transforms.
namespace chow {

/// M^T E - E M; zero exactly when M is fixed by the Rosati involution of E.
Matrix rosati_residual(const Matrix& form, const Matrix& m);

/// Rosati-symmetric 2g x 2g matrix relative to a shared polarization.
class Endo {
 public:
  /// Throws RosatiViolation (message carries the residual) or DimensionMismatch.
  static Endo make(std::shared_ptr<const Polarization> pol, Matrix m);
  static Endo identity(std::shared_ptr<const Polarization> pol);
  static Endo scalar(std::shared_ptr<const Polarization> pol, const Rational& s);

  const Matrix& matrix() const { return m_; }
  const Polarization& polarization() const { return *pol_; }
  const std::shared_ptr<const Polarization>& polarization_ptr() const { return pol_; }

  /// Throws SingularMatrix.
  Endo inverse() const;
  bool is_invertible() const;

  friend Endo operator+(const Endo& a, const Endo& b);
  friend Endo operator-(const Endo& a, const Endo& b);
  friend Endo operator*(const Endo& a, const Endo& b);
  friend Endo operator*(const Rational& s, const Endo& a);

 private:
  Endo(std::shared_ptr<const Polarization> pol, Matrix m) : pol_(std::move(pol)), m_(std::move(m)) {}

  std::shared_ptr<const Polarization> pol_;
  Matrix m_;
};

/// Random Rosati-symmetric endomorphism E^{-1} S with S antisymmetric, entries in [-bound, bound].
Endo random_symmetric_endo(std::shared_ptr<const Polarization> pol, std::mt19937_64& rng, int bound);

/// Degree-2 class with coefficient matrix E M (so L(identity) = d).
ExtClass L_of(const Endo& f);
/// chi(L(f)) / chi(d).
Rational N_of(const Endo& f);

struct IdentitySides {
  ExtClass lhs;
  ExtClass rhs;
  bool holds() const { return lhs == rhs; }
};

/// F_d(e^{L(f)}) vs N(f) e^{L(-f^{-1})}. Throws SingularMatrix.
IdentitySides fourier_exp_sides(const Endo& f);
bool check_fourier_exp(const Endo& f);

/// {F_d(L f1), F_d(L f2)} vs (-1)^g chi F_d(L(f1 f2 + f2 f1)).
IdentitySides jordan_product_sides(const Endo& f1, const Endo& f2);
bool check_jordan_product(const Endo& f1, const Endo& f2);

/// {F_d(e^{L f1}), F_d(e^{L f2})} vs (-1)^g chi F_d(L(f1 f2 + f2 f1) e^{L(f1 + f2)}).
IdentitySides generating_series_sides(const Endo& f1, const Endo& f2);

/// The t-deformed identity at a rational t:
/// F_d^{-1}(e^{td} [(e^{-td} F_d(e^{L f1})) * (e^{-td} F_d(e^{L f2}))])
///   vs (-1)^g chi N(1+t f1) N(1+t f2) N(1-t f) e^{L(f/(1-tf))},
/// f = f1 (1+t f1)^{-1} + f2 (1+t f2)^{-1}. Throws SingularMatrix when an inverse is missing.
IdentitySides deformed_series_sides(const Endo& f1, const Endo& f2, const Rational& t);

/// Both series identities at t.
bool check_gen_series(const Endo& f1, const Endo& f2, const Rational& t);

/// e^{td} . [(e^{-td} . x) * (e^{-td} . y)] at one t.
ExtClass deformed_pontryagin(const Polarization& pol, const ExtClass& x, const ExtClass& y, const Rational& t);

/// Coefficient of t in deformed_pontryagin, recovered by Lagrange
/// interpolation through the sample points. Throws PreconditionError when
/// there are too few distinct points for the polynomial degree.
ExtClass t_coefficient_by_interpolation(const Polarization& pol, const ExtClass& x, const ExtClass& y,
                                        std::span<const Rational> ts);

struct QuadraticRelation {
  Rational alpha;
  Rational beta;  // M^2 = alpha M + beta I
};

std::optional<QuadraticRelation> quadratic_relation(const Matrix& m);

/// With x = F_d(L(f)): {{x,y},{x,x}} vs {x,{y,{x,x}}}. Throws PreconditionError
/// when f has no quadratic relation or y is not in H^{2g-2}.
IdentitySides jordan_identity_sides(const Endo& f, const ExtClass& y);
bool check_jordan_identity(const Endo& f, const ExtClass& y);

}  // namespace chow
