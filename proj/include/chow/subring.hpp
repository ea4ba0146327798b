#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chow/exterior.hpp"
#include "chow/linalg.hpp"
#include "chow/operators.hpp"

// Fourier-stable subrings of the model algebra: the quasitautological ring,
// Pontryagin closures, the Lie algebra of sl2-triples and saturation.
namespace chow {

struct NamedPolarization {
  std::string name;
  std::shared_ptr<const Polarization> pol;
};

/// A subspace together with closure flags. A flag is only present once it
/// has been checked exactly.
struct SubringState {
  ModelContext ctx;
  Subspace space;
  std::optional<bool> pontryagin_closed;
  std::optional<bool> cup_closed;
  std::map<std::string, bool> fourier_stable;
};

/// H^k as a coordinate subspace.
Subspace degree_subspace(const ModelContext& ctx, int k);
/// The even classes.
Subspace even_subspace(const ModelContext& ctx);

/// True when op maps every basis vector of s back into s.
bool is_invariant(const Subspace& s, const SparseMatrix& op);

/// Span of the products of basis pairs.
Subspace product_span(const ModelContext& ctx, const Subspace& a, const Subspace& b, Product product);

/// Smallest Pontryagin-closed subspace containing Q[0] + w.
SubringState pontryagin_subalgebra(const ModelContext& ctx, const Subspace& w);
/// Smallest cup-closed subspace containing Q[A] + w.
Subspace cup_subalgebra(const ModelContext& ctx, const Subspace& w);

/// Pontryagin subalgebra generated by Q[0] + H^{2g-2}.
SubringState qt_ring(const ModelContext& ctx);

struct StabilityReport {
  bool cup_closed = false;
  bool pontryagin_closed = false;
  std::vector<std::pair<std::string, bool>> fourier;
  /// First failing case, in words.
  std::optional<std::string> counterexample;

  bool all() const;
};

/// Verifies cup and Pontryagin closure and F_d(S) in S for each polarization;
/// records the flags on s.
StabilityReport check_stability(SubringState& s, std::span<const NamedPolarization> pols);

/// Lie algebra spanned by ad(h)-eigenvectors, keyed by eigenvalue.
class GradedLie {
 public:
  explicit GradedLie(ModelContext ctx) : ctx_(ctx) {}

  const ModelContext& context() const { return ctx_; }
  const std::map<int, std::vector<SparseMatrix>>& components() const { return parts_; }
  std::size_t dimension() const;

  std::vector<SparseMatrix> negative() const;
  std::vector<SparseMatrix> zero() const;
  std::vector<SparseMatrix> positive() const;
  std::vector<SparseMatrix> non_negative() const;

  void add_component(int weight, std::vector<SparseMatrix> basis);

 private:
  ModelContext ctx_;
  std::map<int, std::vector<SparseMatrix>> parts_;
};

/// Lie closure of all e, f and the common h, split into weight spaces.
/// An empty list gives the zero algebra.
GradedLie build_lie(const ModelContext& ctx, std::span<const NamedPolarization> pols);

/// Degree difference of a homogeneous operator matrix; nullopt for zero or mixed.
std::optional<int> operator_weight(const ModelContext& ctx, const SparseMatrix& m);

struct SaturationResult {
  Subspace space;
  std::size_t iterations = 0;  // rounds of V' = V + U(g0)U(g>0)+(V*V) that enlarged V
};

/// Closes v under g_{>=0}, then adds U(g_{>=0})-images of g_{>0}(V*V) until
/// nothing changes. Throws PreconditionError when v has odd components.
SaturationResult saturate(const Subspace& v, const GradedLie& lie);

struct PonLemReport {
  bool bracket_closed = false;
  bool d_stable = false;
  std::map<long, bool> multiplication_stable;  // [m]^* V in V
  bool hypotheses_hold() const;

  /// Present only when the hypotheses hold.
  std::optional<StabilityReport> conclusion;
  std::optional<SubringState> ring;
};

/// Checks the hypotheses on V in H^{2g} + H^{2g-2} and, when they hold, that
/// the Pontryagin algebra of V + Q d^{g-1} is cup-closed and F_d-stable.
/// Throws PreconditionError when V leaves H^{2g} + H^{2g-2}.
PonLemReport check_pon_lem(const Subspace& v, const NamedPolarization& pol);

}  // namespace chow
