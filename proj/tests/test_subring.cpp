#include <doctest.h>

#include <random>

#include "chow/config.hpp"
#include "chow/errors.hpp"
#include "chow/subring.hpp"
#include "generators.hpp"

using namespace chow;
using chow::testing::random_in_degree;

namespace {

std::vector<NamedPolarization> first(const RunConfig& cfg, std::size_t n) {
  return {cfg.polarizations.begin(), cfg.polarizations.begin() + static_cast<long>(n)};
}

Subspace line(const ExtClass& x) {
  Subspace s(x.context().dim());
  s.insert(x.to_vector());
  return s;
}

ExtClass power_of(const ExtClass& x, int n) {
  ExtClass out = ExtClass::unit(x.context());
  for (int i = 0; i < n; ++i) out = wedge(out, x);
  return out;
}

// Fixed "generic" divisor: coefficients 1, 2, 3, ... on the degree-2 basis.
ExtClass generic_divisor(const ModelContext& ctx) {
  ExtClass x(ctx);
  int c = 1;
  for (Mask m : ctx.basis_of_degree(2)) x.add_term(m, Rational(c++));
  return x;
}

}  // namespace

TEST_CASE("quasitautological ring dimensions") {
  const std::size_t dims[] = {2, 8, 32};
  for (int g = 1; g <= 3; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    SubringState qt = qt_ring(cfg.ctx);
    CHECK(qt.space.rank() == dims[g - 1]);
    const StabilityReport rep = check_stability(qt, cfg.polarizations);
    CHECK(rep.all());
    CHECK(qt.cup_closed == std::optional<bool>(true));
    CHECK(qt.pontryagin_closed == std::optional<bool>(true));
    CHECK(qt.fourier_stable.size() == cfg.polarizations.size());
    CHECK(qt.space.contains(cup_subalgebra(cfg.ctx, degree_subspace(cfg.ctx, 2))));
  }
  const auto ctx = ModelContext::make(2);
  CHECK(qt_ring(ctx).space ==
        subspace_join(subspace_join(degree_subspace(ctx, 0), degree_subspace(ctx, 2)), degree_subspace(ctx, 4)));
}

TEST_CASE("stability checks") {
  const RunConfig cfg = RunConfig::defaults(2);
  const auto& ctx = cfg.ctx;
  SubringState odd{ctx, line(ExtClass::generator(ctx, 0)), {}, {}, {}};
  const StabilityReport bad = check_stability(odd, cfg.polarizations);
  CHECK_FALSE(bad.all());
  CHECK(bad.counterexample.has_value());
  SubringState whole{ctx, Subspace::full(ctx.dim()), {}, {}, {}};
  CHECK(check_stability(whole, cfg.polarizations).all());
}

TEST_CASE("Pontryagin subalgebras") {
  for (int g = 1; g <= 3; ++g) {
    const auto ctx = ModelContext::make(g);
    CHECK(pontryagin_subalgebra(ctx, Subspace(ctx.dim())).space == line(ExtClass::point(ctx)));
    CHECK(pontryagin_subalgebra(ctx, degree_subspace(ctx, 2 * g - 2)).space == qt_ring(ctx).space);
    CHECK(cup_subalgebra(ctx, Subspace(ctx.dim())) == line(ExtClass::unit(ctx)));
  }
  const auto ctx = ModelContext::make(2);
  const Subspace h2 = degree_subspace(ctx, 2);
  CHECK(product_span(ctx, h2, h2, Product::pontryagin).contains(degree_subspace(ctx, 0)));
  CHECK(product_span(ctx, h2, h2, Product::cup) == degree_subspace(ctx, 4));
  CHECK(even_subspace(ctx).rank() == 8);
}

TEST_CASE("push and pull preserve QT") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int g = 1; g <= 3; ++g) {
    const auto ctx = ModelContext::make(g);
    const Subspace qt = qt_ring(ctx).space;
    const std::size_t n = static_cast<std::size_t>(2 * g);
    for (int i = 0; i < 3; ++i) {
      Matrix m(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) m(r, k) = c(rng);
      CHECK(is_invariant(qt, pushforward_op(ctx, m).matrix()));
      CHECK(is_invariant(qt, pullback_op(ctx, m).matrix()));
    }
  }
}

TEST_CASE("Lie algebra of sl2-triples") {
  const std::size_t three[] = {3, 10, 21};
  for (int g = 1; g <= 3; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    CHECK(build_lie(cfg.ctx, first(cfg, 1)).dimension() == 3);
    CHECK(build_lie(cfg.ctx, first(cfg, 0)).dimension() == 0);
    const GradedLie lie = build_lie(cfg.ctx, cfg.polarizations);
    CHECK(lie.dimension() == three[g - 1]);
    for (const auto& [w, basis] : lie.components()) {
      CHECK(w % 2 == 0);
      for (const auto& op : basis) CHECK(operator_weight(cfg.ctx, op) == std::optional<int>(w));
    }
    CHECK(lie.negative().size() == lie.positive().size());
    CHECK(lie.non_negative().size() == lie.zero().size() + lie.positive().size());
  }
  const RunConfig cfg = RunConfig::defaults(2);
  CHECK(build_lie(cfg.ctx, first(cfg, 2)).dimension() == 6);
  CHECK_FALSE(operator_weight(cfg.ctx, SparseMatrix(16, 16)).has_value());
}

TEST_CASE("saturation") {
  for (int g = 1; g <= 2; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    const auto& ctx = cfg.ctx;
    const GradedLie lie = build_lie(ctx, cfg.polarizations);
    CHECK(saturate(Subspace(ctx.dim()), lie).space.is_zero());
    const Subspace pt = line(ExtClass::point(ctx));
    const SaturationResult s = saturate(pt, lie);
    CHECK(s.space == pt);
    CHECK(s.iterations == 0);
    CHECK_THROWS_AS(saturate(line(ExtClass::generator(ctx, 0)), lie), PreconditionError);
  }

  // g = 2, one generic divisor line: frozen ranks for one and for three polarizations.
  const RunConfig cfg = RunConfig::defaults(2);
  const Subspace v = line(generic_divisor(cfg.ctx));
  const SaturationResult one = saturate(v, build_lie(cfg.ctx, first(cfg, 1)));
  CHECK(one.space.rank() == 3);
  CHECK(one.iterations == 1);
  const SaturationResult all = saturate(v, build_lie(cfg.ctx, cfg.polarizations));
  CHECK(all.space.rank() == 5);
  CHECK(all.iterations == 0);
  CHECK(all.space.contains(v));
  CHECK(saturate(all.space, build_lie(cfg.ctx, cfg.polarizations)).space == all.space);

  SubringState ring =
      pontryagin_subalgebra(cfg.ctx, subspace_join(all.space, degree_subspace(cfg.ctx, cfg.ctx.generator_count() - 2)));
  CHECK(check_stability(ring, cfg.polarizations).all());
}

TEST_CASE("closure hypotheses") {
  std::mt19937_64 rng(72);
  for (int g = 1; g <= 3; ++g) {
    const RunConfig cfg = RunConfig::defaults(g);
    const auto& ctx = cfg.ctx;
    const NamedPolarization& ref = cfg.reference_polarization();
    const int top = ctx.generator_count();

    const PonLemReport full = check_pon_lem(subspace_join(degree_subspace(ctx, top), degree_subspace(ctx, top - 2)), ref);
    CHECK(full.hypotheses_hold());
    REQUIRE(full.conclusion);
    CHECK(full.conclusion->all());

    Subspace small = line(ExtClass::point(ctx));
    small.insert(power_of(ref.pol->cls(), g - 1).to_vector());
    const PonLemReport s = check_pon_lem(small, ref);
    CHECK(s.hypotheses_hold());
    REQUIRE(s.conclusion);
    CHECK(s.conclusion->all());
    CHECK(s.multiplication_stable.size() == 3);

    if (g >= 2) {
      const PonLemReport bare = check_pon_lem(line(power_of(ref.pol->cls(), g - 1)), ref);
      CHECK(bare.bracket_closed);
      CHECK_FALSE(bare.d_stable);
      CHECK_FALSE(bare.conclusion.has_value());
      CHECK_THROWS_AS(check_pon_lem(line(random_in_degree(ctx, 2, rng) + ExtClass::unit(ctx)), ref),
                      PreconditionError);
    }
  }
}
