#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chow/linalg.hpp"
#include "chow/rational.hpp"

// Cohomological model of an abelian variety A of dimension g: the exterior
// algebra on 2g degree-one generators a1..ag, b1..bg, together with the model
// of A x A (the graded tensor square, 4g generators).
//
// Basis elements are bitmasks over the generators, read as the wedge of the
// set generators in ascending bit order. Bit i < g is a_{i+1}, bit g + i is
// b_{i+1}. On A x A the first factor occupies bits 0..2g-1 and the second
// factor bits 2g..4g-1, so the mask (S | T << 2g) is exactly S (x) T.
namespace chow {

using Mask = std::uint32_t;

/// Sign of (wedge of lhs) ^ (wedge of rhs) relative to the ascending wedge of
/// lhs | rhs. Zero when the masks overlap.
int merge_sign(Mask lhs, Mask rhs);

inline int degree_of(Mask m) { return __builtin_popcount(m); }

class ModelContext {
 public:
  /// 1 <= g <= 6; throws PreconditionError otherwise.
  static ModelContext make(int g);

  int g() const { return g_; }
  int generator_count() const { return 2 * g_; }
  std::size_t dim() const { return std::size_t{1} << (2 * g_); }
  Mask top_mask() const { return static_cast<Mask>(dim() - 1); }
  /// integrate(ascending top wedge); fixed so that integrate(a1 b1 a2 b2 ... ag bg) = 1.
  int orientation_sign() const { return orientation_sign_; }
  std::string generator_name(int index) const;
  /// Index of "a3" / "b1" etc., or nullopt.
  std::optional<int> generator_index(const std::string& name) const;
  /// Masks of degree k in increasing order.
  std::vector<Mask> basis_of_degree(int k) const;
  std::vector<Mask> even_basis() const;

  friend bool operator==(const ModelContext& a, const ModelContext& b) { return a.g_ == b.g_; }

 private:
  explicit ModelContext(int g);
  int g_ = 1;
  int orientation_sign_ = 1;
};

/// An element of the model algebra: sparse map from basis mask to coefficient.
class ExtClass {
 public:
  explicit ExtClass(ModelContext ctx) : ctx_(ctx) {}

  static ExtClass unit(ModelContext ctx);   // [A]
  static ExtClass point(ModelContext ctx);  // [0], integral 1
  static ExtClass generator(ModelContext ctx, int index);
  static ExtClass basis(ModelContext ctx, Mask mask, Rational coeff = Rational(1));
  static ExtClass from_vector(ModelContext ctx, const SparseVec& v);

  const ModelContext& context() const { return ctx_; }
  const std::map<Mask, Rational>& terms() const { return terms_; }
  Rational coeff(Mask m) const;
  void add_term(Mask m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_even() const;
  /// Degree when homogeneous and nonzero.
  std::optional<int> degree() const;
  ExtClass graded_part(int k) const;
  SparseVec to_vector() const;

  ExtClass& operator+=(const ExtClass& other);
  ExtClass& operator-=(const ExtClass& other);
  ExtClass& operator*=(const Rational& s);
  friend ExtClass operator+(ExtClass a, const ExtClass& b) { return a += b; }
  friend ExtClass operator-(ExtClass a, const ExtClass& b) { return a -= b; }
  friend ExtClass operator-(ExtClass a) { return a *= Rational(-1); }
  friend ExtClass operator*(const Rational& s, ExtClass a) { return a *= s; }
  friend bool operator==(const ExtClass& a, const ExtClass& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_context(const ExtClass& other) const;

  ModelContext ctx_;
  std::map<Mask, Rational> terms_;
};

/// Class on A x A (masks over 4g bits).
class ProductClass {
 public:
  explicit ProductClass(ModelContext ctx) : ctx_(ctx) {}

  const ModelContext& context() const { return ctx_; }
  const std::map<Mask, Rational>& terms() const { return terms_; }
  void add_term(Mask m, const Rational& c);
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(Mask m) const;

  ProductClass& operator+=(const ProductClass& other);
  ProductClass& operator-=(const ProductClass& other);
  ProductClass& operator*=(const Rational& s);
  friend ProductClass operator+(ProductClass a, const ProductClass& b) { return a += b; }
  friend ProductClass operator-(ProductClass a, const ProductClass& b) { return a -= b; }
  friend bool operator==(const ProductClass& a, const ProductClass& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  ModelContext ctx_;
  std::map<Mask, Rational> terms_;
};

/// Nondegenerate antisymmetric form E on H^1 and its class d = sum_{i<j} E_ij g_i g_j.
class Polarization {
 public:
  /// Throws PreconditionError (bad shape / not antisymmetric) or
  /// DegeneratePolarization (chi = 0).
  Polarization(ModelContext ctx, Matrix form);

  /// E = sum of the blocks pairing a_i with b_i; d = sum a_i b_i, chi = 1.
  static Polarization standard(ModelContext ctx);

  const ModelContext& context() const { return ctx_; }
  const Matrix& form() const { return form_; }
  const ExtClass& cls() const { return d_; }
  const Rational& chi() const { return chi_; }
  const ExtClass& exp_d() const { return exp_d_; }
  const ExtClass& exp_minus_d() const { return exp_minus_d_; }
  /// m^*d - p1^*d - p2^*d, cached.
  const ProductClass& biext() const { return biext_; }

 private:
  ModelContext ctx_;
  Matrix form_;
  ExtClass d_;
  Rational chi_;
  ExtClass exp_d_;
  ExtClass exp_minus_d_;
  ProductClass biext_;
};

/// Degree-2 class with coefficient matrix `form` (only i < j entries are read).
ExtClass two_form_class(ModelContext ctx, const Matrix& form);
/// integrate(c^g) / g! for a degree-2 class c.
Rational euler_characteristic(const ExtClass& c);

ExtClass wedge(const ExtClass& x, const ExtClass& y);
Rational integrate(const ExtClass& x);
/// integrate(x ^ y)
Rational poincare_pairing(const ExtClass& x, const ExtClass& y);

/// Algebra endomorphism extending g_j -> sum_i M_ij g_i on degree one.
ExtClass pullback_linear(const Matrix& m, const ExtClass& x);
/// Poincare adjoint of pullback_linear: integrate(push(x) ^ w) = integrate(x ^ pull(w)).
ExtClass pushforward_linear(const Matrix& m, const ExtClass& x);
/// [-1]^*: multiplies H^k by (-1)^k.
ExtClass minus_one_pullback(const ExtClass& x);

/// Pontryagin product of two basis masks: result is sign * (s & t) when
/// s | t covers every generator, zero otherwise. Returns {mask, sign}.
std::pair<Mask, int> pontryagin_basis(const ModelContext& ctx, Mask s, Mask t);
ExtClass pontryagin(const ExtClass& x, const ExtClass& y);

// Product model maps.
ProductClass pull_first(const ExtClass& x);   // p1^*
ProductClass pull_second(const ExtClass& x);  // p2^*
ProductClass pull_sum(const ExtClass& x);     // m^*
ProductClass product_wedge(const ProductClass& x, const ProductClass& y);
Rational product_integrate(const ProductClass& z);
/// m_*, the Poincare adjoint of m^*.
ExtClass push_sum(const ProductClass& z);

ProductClass biext_class(const Polarization& pol);
/// {x, y} = m_*(l . p1^*x . p2^*y) with l the biextension class of pol.
ExtClass bracket_xi(const Polarization& pol, const ExtClass& x, const ExtClass& y);

/// sum x^k / k!; x must be even with no degree-0 part (PreconditionError).
ExtClass exp_class(const ExtClass& x);

/// F_d(x) = chi^{-1} e^{-d} . [ (e^{-d} . [-1]^*x) * e^d ]
ExtClass fourier(const Polarization& pol, const ExtClass& x);

namespace reference {

/// Pontryagin product computed literally as m_*(p1^*x . p2^*y), with m_*
/// obtained by solving the Poincare adjoint equations against m^* on the
/// product model. Slow; kept as the oracle for pontryagin().
ExtClass pontryagin_adjoint(const ExtClass& x, const ExtClass& y);

/// pushforward by solving integrate(push(x) ^ w) = integrate(x ^ pull(w)) for every basis w.
ExtClass pushforward_adjoint(const Matrix& m, const ExtClass& x);

}  // namespace reference

}  // namespace chow
