#include <doctest.h>

#include <random>

#include "chow/errors.hpp"
#include "chow/exterior.hpp"
#include "generators.hpp"

using namespace chow;
using chow::testing::random_class;
using chow::testing::random_even_class;

namespace {

// Parity of the permutation sorting the concatenated index lists.
int sign_by_inversions(Mask lhs, Mask rhs) {
  if (lhs & rhs) return 0;
  std::vector<int> seq;
  for (int i = 0; i < 32; ++i)
    if (lhs >> i & 1) seq.push_back(i);
  for (int i = 0; i < 32; ++i)
    if (rhs >> i & 1) seq.push_back(i);
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

ExtClass gen(const ModelContext& ctx, const char* name) { return ExtClass::generator(ctx, *ctx.generator_index(name)); }

}  // namespace

TEST_CASE("merge_sign matches inversion count") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Mask> m(0, 255);
  for (int i = 0; i < 2000; ++i) {
    const Mask a = m(rng), b = m(rng);
    CHECK(merge_sign(a, b) == sign_by_inversions(a, b));
  }
}

TEST_CASE("wedge basics") {
  const auto ctx = ModelContext::make(2);
  const ExtClass a1 = gen(ctx, "a1"), b1 = gen(ctx, "b1");
  CHECK(wedge(a1, a1).is_zero());
  CHECK(wedge(a1, b1) == ExtClass::basis(ctx, 0b0101));
  CHECK(wedge(b1, a1) == ExtClass::basis(ctx, 0b0101, Rational(-1)));
  CHECK(integrate(ExtClass::unit(ctx)) == 0);
  CHECK_THROWS_AS(wedge(a1, ExtClass::unit(ModelContext::make(3))), ContextMismatch);
}

TEST_CASE("wedge is associative and graded commutative") {
  std::mt19937_64 rng(32);
  for (int g = 1; g <= 3; ++g) {
    const auto ctx = ModelContext::make(g);
    for (int i = 0; i < 30; ++i) {
      const ExtClass x = random_class(ctx, rng), y = random_class(ctx, rng), z = random_class(ctx, rng);
      CHECK(wedge(wedge(x, y), z) == wedge(x, wedge(y, z)));
      const ExtClass u = random_even_class(ctx, rng);
      CHECK(wedge(u, x) == wedge(x, u));
    }
  }
}

TEST_CASE("orientation and Euler characteristic") {
  for (int g = 1; g <= 5; ++g) {
    const auto ctx = ModelContext::make(g);
    ExtClass w = ExtClass::unit(ctx);
    for (int i = 1; i <= g; ++i) {
      w = wedge(w, gen(ctx, ("a" + std::to_string(i)).c_str()));
      w = wedge(w, gen(ctx, ("b" + std::to_string(i)).c_str()));
    }
    CHECK(integrate(w) == 1);
    CHECK(integrate(ExtClass::point(ctx)) == 1);
    const Polarization pol = Polarization::standard(ctx);
    CHECK(pol.chi() == 1);
    CHECK(euler_characteristic(pol.cls()) == 1);
    CHECK(euler_characteristic(Rational(3) * pol.cls()) == power(Rational(3), g));
  }
}

TEST_CASE("degenerate and malformed forms are rejected") {
  const auto ctx = ModelContext::make(2);
  CHECK_THROWS_AS(Polarization(ctx, Matrix(4, 4)), DegeneratePolarization);
  CHECK_THROWS_AS(Polarization(ctx, Matrix::identity(4)), PreconditionError);
  CHECK_THROWS_AS(Polarization(ctx, Matrix(2, 2)), PreconditionError);
  CHECK_THROWS_AS(ModelContext::make(0), PreconditionError);
  CHECK_THROWS_AS(ModelContext::make(7), PreconditionError);
}

TEST_CASE("Pontryagin product agrees with the adjoint oracle") {
  for (int g = 1; g <= 2; ++g) {
    const auto ctx = ModelContext::make(g);
    for (Mask s = 0; s < ctx.dim(); ++s)
      for (Mask t = 0; t < ctx.dim(); ++t) {
        const ExtClass x = ExtClass::basis(ctx, s), y = ExtClass::basis(ctx, t);
        CHECK(pontryagin(x, y) == reference::pontryagin_adjoint(x, y));
      }
  }
  std::mt19937_64 rng(33);
  const auto ctx = ModelContext::make(3);
  for (int i = 0; i < 10; ++i) {
    const ExtClass x = random_class(ctx, rng), y = random_class(ctx, rng);
    CHECK(pontryagin(x, y) == reference::pontryagin_adjoint(x, y));
  }
}

TEST_CASE("Pontryagin product laws") {
  std::mt19937_64 rng(34);
  for (int g = 1; g <= 3; ++g) {
    const auto ctx = ModelContext::make(g);
    CHECK(pontryagin(ExtClass::unit(ctx), ExtClass::unit(ctx)).is_zero());
    for (int i = 0; i < 20; ++i) {
      const ExtClass x = random_even_class(ctx, rng), y = random_even_class(ctx, rng), z = random_class(ctx, rng);
      CHECK(pontryagin(ExtClass::point(ctx), z) == z);
      CHECK(pontryagin(x, y) == pontryagin(y, x));
      CHECK(pontryagin(pontryagin(x, y), z) == pontryagin(x, pontryagin(y, z)));
    }
  }
}

TEST_CASE("pullback and pushforward") {
  std::mt19937_64 rng(35);
  for (int g = 1; g <= 3; ++g) {
    const auto ctx = ModelContext::make(g);
    const std::size_t n = static_cast<std::size_t>(2 * g);
    for (long k : {2L, -1L, 3L}) {
      const Matrix m = Matrix::scalar(n, Rational(k));
      for (int deg = 0; deg <= 2 * g; ++deg)
        for (Mask b : ctx.basis_of_degree(deg)) {
          const ExtClass x = ExtClass::basis(ctx, b);
          CHECK(pullback_linear(m, x) == power(Rational(k), deg) * x);
        }
      CHECK(pushforward_linear(m, ExtClass::point(ctx)) == ExtClass::point(ctx));
      CHECK(pushforward_linear(m, ExtClass::unit(ctx)) == power(Rational(k), 2 * g) * ExtClass::unit(ctx));
    }
    const ExtClass x = random_class(ctx, rng);
    CHECK(pullback_linear(Matrix::identity(n), x) == x);
    CHECK(pushforward_linear(Matrix::identity(n), x) == x);
    CHECK(minus_one_pullback(x) == pullback_linear(Matrix::scalar(n, Rational(-1)), x));

    std::uniform_int_distribution<int> c(-2, 2);
    for (int trial = 0; trial < 4; ++trial) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = c(rng);
      const ExtClass y = random_class(ctx, rng), w = random_class(ctx, rng);
      CHECK(pushforward_linear(m, y) == reference::pushforward_adjoint(m, y));
      CHECK(poincare_pairing(pushforward_linear(m, y), w) == poincare_pairing(y, pullback_linear(m, w)));
      CHECK(pullback_linear(m, wedge(y, w)) == wedge(pullback_linear(m, y), pullback_linear(m, w)));
    }
  }
}

TEST_CASE("push_sum is adjoint to pull_sum") {
  std::mt19937_64 rng(36);
  const auto ctx = ModelContext::make(2);
  for (int i = 0; i < 10; ++i) {
    const ExtClass x = random_class(ctx, rng), y = random_class(ctx, rng), w = random_class(ctx, rng);
    const ProductClass z = product_wedge(pull_first(x), pull_second(y));
    CHECK(integrate(wedge(push_sum(z), w)) == product_integrate(product_wedge(z, pull_sum(w))));
    CHECK(push_sum(z) == pontryagin(x, y));
  }
}

TEST_CASE("exp_class") {
  const auto ctx = ModelContext::make(2);
  const Polarization pol = Polarization::standard(ctx);
  CHECK(exp_class(ExtClass(ctx)) == ExtClass::unit(ctx));
  CHECK(pol.exp_d() == ExtClass::unit(ctx) + pol.cls() + ExtClass::point(ctx));
  CHECK(exp_class(Polarization::standard(ModelContext::make(1)).cls()) ==
        ExtClass::unit(ModelContext::make(1)) + Polarization::standard(ModelContext::make(1)).cls());
  CHECK_THROWS_AS(exp_class(ExtClass::unit(ctx)), PreconditionError);
  CHECK_THROWS_AS(exp_class(gen(ctx, "a1")), PreconditionError);
}

TEST_CASE("Fourier transform") {
  std::mt19937_64 rng(37);
  for (int g = 1; g <= 3; ++g) {
    const auto ctx = ModelContext::make(g);
    const Polarization std_pol = Polarization::standard(ctx);
    for (const Polarization& pol : {std_pol, chow::testing::random_polarization(ctx, rng)}) {
      CHECK(fourier(pol, ExtClass::point(ctx)) == (1 / pol.chi()) * ExtClass::unit(ctx));
      CHECK(fourier(pol, pol.exp_d()) == pol.exp_minus_d());
      for (Mask b = 0; b < ctx.dim(); ++b) {
        const ExtClass x = ExtClass::basis(ctx, b);
        const ExtClass ff = fourier(pol, fourier(pol, x));
        CHECK(ff == (g % 2 ? Rational(-1) : Rational(1)) * minus_one_pullback(x));
        const ExtClass fx = fourier(pol, x);
        if (!fx.is_zero()) CHECK(fx.degree() == std::optional<int>(2 * g - degree_of(b)));
      }
      for (int i = 0; i < 10; ++i) {
        const ExtClass x = random_even_class(ctx, rng), y = random_even_class(ctx, rng);
        CHECK(fourier(pol, pontryagin(x, y)) == pol.chi() * wedge(fourier(pol, x), fourier(pol, y)));
      }
    }
  }
}

TEST_CASE("biextension class") {
  for (int g = 1; g <= 3; ++g) {
    const auto ctx = ModelContext::make(g);
    const Polarization pol = Polarization::standard(ctx);
    const ProductClass& l = pol.biext();
    CHECK(l == pull_sum(pol.cls()) - pull_first(pol.cls()) - pull_second(pol.cls()));
    const Mask low = (Mask{1} << (2 * g)) - 1;
    for (const auto& [m, c] : l.terms()) {
      CHECK(degree_of(m & low) == 1);
      CHECK(degree_of(m >> (2 * g)) == 1);
    }
  }
}

TEST_CASE("bracket") {
  std::mt19937_64 rng(38);
  for (int g = 1; g <= 2; ++g) {
    const auto ctx = ModelContext::make(g);
    const Polarization pol = Polarization::standard(ctx);
    const ExtClass pt = ExtClass::point(ctx), one = ExtClass::unit(ctx);
    CHECK(bracket_xi(pol, pt, pt).is_zero());
    CHECK(bracket_xi(pol, pt, one).is_zero());
    for (int i = 0; i < 10; ++i) {
      const ExtClass x = random_even_class(ctx, rng), y = random_even_class(ctx, rng);
      CHECK(bracket_xi(pol, x, y) == bracket_xi(pol, y, x));
      CHECK(bracket_xi(pol, x, y) ==
            wedge(pol.cls(), pontryagin(x, y)) - pontryagin(wedge(pol.cls(), x), y) - pontryagin(wedge(pol.cls(), y), x));
    }
  }
}
