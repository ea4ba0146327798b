#pragma once

#include <functional>
#include <optional>

#include "chow/exterior.hpp"
#include "chow/linalg.hpp"

namespace chow {

enum class Product { cup, pontryagin };

/// Linear endomorphism of the model algebra, in the basis of masks.
class LinOp {
 public:
  LinOp(ModelContext ctx, SparseMatrix matrix, std::optional<int> weight = std::nullopt);

  static LinOp identity(ModelContext ctx);
  static LinOp zero(ModelContext ctx);
  /// Matrix of a linear map given by its action on basis classes.
  static LinOp from_function(ModelContext ctx, const std::function<ExtClass(const ExtClass&)>& fn,
                             std::optional<int> weight = std::nullopt);

  const ModelContext& context() const { return ctx_; }
  const SparseMatrix& matrix() const { return matrix_; }
  /// ad(h)-weight, when known.
  std::optional<int> weight() const { return weight_; }
  bool is_zero() const { return matrix_.is_zero(); }

  ExtClass apply(const ExtClass& x) const;

  friend LinOp operator+(const LinOp& a, const LinOp& b);
  friend LinOp operator-(const LinOp& a, const LinOp& b);
  friend LinOp operator*(const LinOp& a, const LinOp& b);
  friend LinOp operator*(const Rational& s, const LinOp& a);
  friend bool operator==(const LinOp& a, const LinOp& b) { return a.ctx_ == b.ctx_ && a.matrix_ == b.matrix_; }

 private:
  ModelContext ctx_;
  SparseMatrix matrix_;
  std::optional<int> weight_;
};

/// [a, b] = ab - ba
LinOp commutator(const LinOp& a, const LinOp& b);
/// ad(x)^n (y)
LinOp ad_power(const LinOp& x, const LinOp& y, int n);

/// L_a : x -> a . x
LinOp op_mul_cup(const ExtClass& a);
/// Lambda_a : x -> a * x
LinOp op_mul_pontryagin(const ExtClass& a);
/// (k - g) on H^k.
LinOp grading_operator(const ModelContext& ctx);
LinOp minus_one_op(const ModelContext& ctx);
LinOp pullback_op(const ModelContext& ctx, const Matrix& m);
LinOp pushforward_op(const ModelContext& ctx, const Matrix& m);

struct Sl2Triple {
  LinOp e;
  LinOp f;
  LinOp h;
};

/// e = L_d, f = Lambda_{d^{g-1} / ((g-1)! chi)}, h = grading_operator.
Sl2Triple sl2_of(const Polarization& pol);

/// sum T^k / k!. Throws NotNilpotent when no power up to dim vanishes.
LinOp exp_nilpotent(const LinOp& t);

/// Matrix of fourier(pol, .).
LinOp fourier_op(const Polarization& pol);
/// (-1)^g F_d [-1]^*, the inverse of fourier_op.
LinOp fourier_inverse_op(const Polarization& pol);

/// Grothendieck order of t as a differential operator on the even subalgebra
/// for the chosen product; -1 for t = 0. Probes with generators of the even
/// subalgebra (H^2 for cup, H^{2g-2} for Pontryagin).
/// Throws PreconditionError when t does not preserve the even subalgebra.
int diff_order(const LinOp& t, Product product);

struct LowestWeightCheck {
  bool holds = false;
  Rational constant;  // c with L_{F_d(a)} = c ad(e)^{2g-k}(Lambda_a)
};

/// Tests L_{F_d(a)} = c ad(e)^{2g-k}(Lambda_a) for homogeneous even a of degree k.
LowestWeightCheck check_sl2_lowest_weight(const Polarization& pol, const ExtClass& a);

}  // namespace chow

namespace chow {

/// c with target = c * base, when such c exists (base nonzero). A zero
/// target gives c = 0.
std::optional<Rational> proportionality(const SparseMatrix& target, const SparseMatrix& base);

/// y -> {x, y}_xi
LinOp bracket_operator(const Polarization& pol, const ExtClass& x);

namespace reference {

/// diff_order probing with every even basis class. Kept as the oracle for diff_order.
int diff_order_all_probes(const LinOp& t, Product product);

}  // namespace reference

}  // namespace chow
