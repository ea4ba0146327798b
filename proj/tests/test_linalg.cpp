#include <doctest.h>

#include <random>

#include "chow/errors.hpp"
#include "chow/linalg.hpp"

using namespace chow;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound, double density = 1.0) {
  std::uniform_int_distribution<int> v(-bound, bound);
  std::bernoulli_distribution keep(density);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m(i, j) = v(rng);
  return m;
}

// Laplace expansion along the first row.
Rational cofactor_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Rational term = m(0, j) * cofactor_det(minor);
    total += j % 2 ? Rational(-term) : term;
  }
  return total;
}

SparseVec e(Index i) { return SparseVec::unit(i); }

}  // namespace

TEST_CASE("rref examples") {
  const RrefResult a = rref(Matrix{{2, 4}, {1, 2}});
  CHECK(a.reduced == Matrix{{1, 2}});
  CHECK(a.pivots == std::vector<std::size_t>{0});

  const RrefResult b = rref(Matrix::identity(4));
  CHECK(b.reduced == Matrix::identity(4));
  CHECK(b.pivots == std::vector<std::size_t>{0, 1, 2, 3});

  const RrefResult c = rref(Matrix{{0, 0}});
  CHECK(c.reduced.rows() == 0);
  CHECK(c.pivots.empty());
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Matrix m = random_matrix(rng, n, n, 4, 0.7);
    CHECK(determinant(m) == cofactor_det(m));
    CHECK((rank(m) == n) == (cofactor_det(m) != 0));
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Matrix m = random_matrix(rng, n, n, 5);
    if (determinant(m) == 0) {
      CHECK_THROWS_AS(inverse(m), SingularMatrix);
      continue;
    }
    const Matrix inv = inverse(m);
    CHECK(m * inv == Matrix::identity(n));
    CHECK(inv * m == Matrix::identity(n));
  }
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST_CASE("rref is idempotent and keeps the row space") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = random_matrix(rng, 1 + trial % 4, 1 + trial % 6, 3, 0.5);
    const RrefResult r = rref(m);
    CHECK(rref(r.reduced).reduced == r.reduced);
    CHECK(r.reduced.rows() == rank(m));
    CHECK(Subspace::from_matrix(m) == Subspace::from_matrix(r.reduced));
  }
}

TEST_CASE("sparse vectors normalize and match dense arithmetic") {
  const SparseVec v = SparseVec::from_entries({{3, 2}, {1, 5}, {3, -2}, {0, 0}, {1, 1}});
  CHECK(v.nnz() == 1);
  CHECK(v.at(1) == 6);
  CHECK(v.at(3) == 0);
  CHECK(v.extent() == 2);

  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> x(8), y(8);
    for (auto& q : x) q = c(rng);
    for (auto& q : y) q = c(rng);
    const Rational a = ratio(c(rng), 3);
    SparseVec sx = SparseVec::from_dense(x), sy = SparseVec::from_dense(y);
    std::vector<Rational> expect(8);
    for (int i = 0; i < 8; ++i) expect[i] = x[i] + a * y[i];
    SparseVec z = sx;
    z.axpy(a, sy);
    CHECK(z.to_dense(8) == expect);
    CHECK((sx + a * sy) == z);
    CHECK((sx - sx).empty());
  }
}

TEST_CASE("sparse matrix products match dense products") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_matrix(rng, 5, 4, 3, 0.4);
    const Matrix b = random_matrix(rng, 4, 6, 3, 0.4);
    const SparseMatrix sa = SparseMatrix::from_dense(a), sb = SparseMatrix::from_dense(b);
    CHECK((sa * sb).to_dense() == a * b);
    CHECK(sa.transpose().to_dense() == a.transpose());
    CHECK(SparseMatrix::unflatten(sa.flatten(), 5, 4) == sa);
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < 4; ++j) {
      std::map<Index, Rational> col;
      for (std::size_t i = 0; i < 5; ++i)
        if (a(i, j) != 0) col[static_cast<Index>(i)] = a(i, j);
      cols.push_back(SparseVec::from_map(col));
    }
    CHECK(SparseMatrix::from_columns(5, 4, cols) == sa);
  }
}

TEST_CASE("commutator") {
  const SparseMatrix a = SparseMatrix::from_dense(Matrix{{0, 1}, {0, 0}});
  const SparseMatrix b = SparseMatrix::from_dense(Matrix{{0, 0}, {1, 0}});
  CHECK(commutator(a, b).to_dense() == Matrix{{1, 0}, {0, -1}});
  CHECK(commutator(a, a).is_zero());
}

TEST_CASE("subspace join and membership") {
  Subspace s1(4), s2(4), zero(4);
  s1.insert(e(0));
  s2.insert(e(1));
  CHECK(subspace_join(s1, s1) == s1);
  CHECK(subspace_join(s1, zero) == s1);
  CHECK(subspace_join(s1, s2).rank() == 2);
  CHECK(s1.contains(e(0)));
  CHECK_FALSE(s1.contains(e(1)));
  CHECK(s1.contains(SparseVec{}));
  CHECK(subspace_join(s1, s2).contains(s1));
}

TEST_CASE("subspace bases are canonical") {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SparseVec> vs;
    for (int k = 0; k < 4; ++k) {
      std::vector<Rational> d(7);
      for (auto& q : d) q = c(rng);
      vs.push_back(SparseVec::from_dense(d));
    }
    Subspace forward(7), backward(7);
    for (const auto& v : vs) forward.insert(v);
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) backward.insert(*it);
    CHECK(forward == backward);
    CHECK(forward == Subspace::span(7, vs));
    for (const auto& v : vs) CHECK(forward.contains(v));
    CHECK_FALSE(forward.insert(vs[0] + vs[1]));
  }
}

TEST_CASE("closure") {
  Subspace s(4);
  s.insert(e(0));
  CHECK(closure(s, {}) == s);

  SparseMatrix shift = SparseMatrix::from_dense(Matrix{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  const std::vector<SparseMatrix> ops{shift};
  ClosureStats stats;
  CHECK(closure(s, ops, &stats) == Subspace::full(4));
  CHECK(stats.iterations >= 1);

  // sl2 string of length 3: raising e from the lowest-weight vector.
  const SparseMatrix raise = SparseMatrix::from_dense(Matrix{{0, 0, 0}, {2, 0, 0}, {0, 1, 0}});
  Subspace low(3);
  low.insert(e(0));
  CHECK(closure(low, std::vector<SparseMatrix>{raise}).rank() == 3);
}

TEST_CASE("lie closure") {
  const SparseMatrix e2 = SparseMatrix::from_dense(Matrix{{0, 1}, {0, 0}});
  const SparseMatrix f2 = SparseMatrix::from_dense(Matrix{{0, 0}, {1, 0}});
  const SparseMatrix h2 = SparseMatrix::from_dense(Matrix{{1, 0}, {0, -1}});
  CHECK(lie_closure(std::vector<SparseMatrix>{}).empty());
  CHECK(lie_closure(std::vector<SparseMatrix>{h2}).size() == 1);
  const auto sl2 = lie_closure(std::vector<SparseMatrix>{e2, f2});
  CHECK(sl2.size() == 3);
  std::vector<SparseVec> flat;
  for (const auto& m : sl2) flat.push_back(m.flatten());
  CHECK(Subspace::span(4, flat).contains(h2.flatten()));

  // Strictly upper triangular 3x3 matrices: two generators close to dimension 3.
  const SparseMatrix a = SparseMatrix::from_dense(Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
  const SparseMatrix b = SparseMatrix::from_dense(Matrix{{0, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(lie_closure(std::vector<SparseMatrix>{a, b}).size() == 3);
}
