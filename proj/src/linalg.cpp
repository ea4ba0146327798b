#include "chow/linalg.hpp"

#include <algorithm>
#include <string>

#include "chow/errors.hpp"
#include "chow/kernels.hpp"

namespace chow {

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVec out;
  for (auto& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().index == e.index) {
      out.entries_.back().value += e.value;
      if (is_zero(out.entries_.back().value)) out.entries_.pop_back();
    } else if (!is_zero(e.value)) {
      out.entries_.push_back(std::move(e));
    }
  }
  return out;
}

SparseVec SparseVec::from_map(const std::map<Index, Rational>& terms) {
  SparseVec out;
  out.entries_.reserve(terms.size());
  for (const auto& [i, v] : terms) {
    if (!is_zero(v)) out.entries_.push_back({i, v});
  }
  return out;
}

SparseVec SparseVec::from_dense(std::span<const Rational> values) {
  SparseVec out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!is_zero(values[i])) out.entries_.push_back({static_cast<Index>(i), values[i]});
  }
  return out;
}

SparseVec SparseVec::unit(Index i, Rational value) {
  SparseVec out;
  if (!is_zero(value)) out.entries_.push_back({i, std::move(value)});
  return out;
}

std::vector<Rational> SparseVec::to_dense(std::size_t n) const {
  std::vector<Rational> out(n);
  for (const auto& e : entries_) {
    if (e.index >= n) throw DimensionMismatch("sparse vector index exceeds dense length");
    out[e.index] = e.value;
  }
  return out;
}

Rational SparseVec::at(Index i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, Index key) { return e.index < key; });
  if (it == entries_.end() || it->index != i) return Rational(0);
  return it->value;
}

void SparseVec::axpy(const Rational& a, const SparseVec& x) {
  if (is_zero(a) || x.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + x.entries_.size());
  auto it = entries_.begin();
  auto jt = x.entries_.begin();
  while (it != entries_.end() || jt != x.entries_.end()) {
    if (jt == x.entries_.end() || (it != entries_.end() && it->index < jt->index)) {
      merged.push_back(std::move(*it++));
    } else if (it == entries_.end() || jt->index < it->index) {
      merged.push_back({jt->index, a * jt->value});
      ++jt;
    } else {
      Rational v = it->value + a * jt->value;
      if (!is_zero(v)) merged.push_back({it->index, std::move(v)});
      ++it;
      ++jt;
    }
  }
  entries_ = std::move(merged);
}

SparseVec& SparseVec::operator*=(const Rational& a) {
  if (is_zero(a)) {
    entries_.clear();
  } else {
    for (auto& e : entries_) e.value *= a;
  }
  return *this;
}

SparseVec operator+(const SparseVec& x, const SparseVec& y) {
  SparseVec out = x;
  out.axpy(Rational(1), y);
  return out;
}

SparseVec operator-(const SparseVec& x, const SparseVec& y) {
  SparseVec out = x;
  out.axpy(Rational(-1), y);
  return out;
}

SparseVec operator*(const Rational& a, const SparseVec& x) {
  SparseVec out = x;
  out *= a;
  return out;
}

// ------------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, Rational(1)); }

Matrix Matrix::scalar(std::size_t n, const Rational& s) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return chow::is_zero(q); });
}

bool Matrix::is_antisymmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix shapes differ");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

Matrix operator-(const Matrix& a) { return Rational(-1) * a; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shapes differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    const Rational inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      const Rational factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix reduced(pivots.size(), a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && is_zero(a(sel, col))) ++sel;
    if (sel == n) return Rational(0);
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(a(i, col))) continue;
      const Rational factor = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= factor * a(col, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RrefResult r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

// ------------------------------------------------------------- SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), rows_data_(rows) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_data_[i] = SparseVec::unit(static_cast<Index>(i));
  return m;
}

SparseMatrix SparseMatrix::from_rows(std::size_t rows, std::size_t cols, std::vector<SparseVec> row_data) {
  if (row_data.size() != rows) throw DimensionMismatch("row count mismatch");
  for (const auto& r : row_data)
    if (r.extent() > cols) throw DimensionMismatch("row entry beyond column count");
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.rows_data_ = std::move(row_data);
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::size_t cols, const std::vector<SparseVec>& col_data) {
  if (col_data.size() != cols) throw DimensionMismatch("column count mismatch");
  std::vector<std::vector<Entry>> buckets(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& e : col_data[j].entries()) {
      if (e.index >= rows) throw DimensionMismatch("column entry beyond row count");
      buckets[e.index].push_back({static_cast<Index>(j), e.value});
    }
  }
  std::vector<SparseVec> row_data(rows);
  // columns are visited in increasing order, so each bucket is already sorted
  for (std::size_t i = 0; i < rows; ++i) row_data[i] = SparseVec::from_entries(std::move(buckets[i]));
  return from_rows(rows, cols, std::move(row_data));
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  std::vector<SparseVec> row_data(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Rational> r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
    row_data[i] = SparseVec::from_dense(r);
  }
  return from_rows(m.rows(), m.cols(), std::move(row_data));
}

SparseMatrix SparseMatrix::unflatten(const SparseVec& flat, std::size_t rows, std::size_t cols) {
  std::vector<std::vector<Entry>> buckets(rows);
  for (const auto& e : flat.entries()) {
    const std::size_t i = e.index / cols;
    if (i >= rows) throw DimensionMismatch("flattened index out of range");
    buckets[i].push_back({static_cast<Index>(e.index % cols), e.value});
  }
  std::vector<SparseVec> row_data(rows);
  for (std::size_t i = 0; i < rows; ++i) row_data[i] = SparseVec::from_entries(std::move(buckets[i]));
  return from_rows(rows, cols, std::move(row_data));
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_data_) n += r.nnz();
  return n;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(rows_data_.begin(), rows_data_.end(), [](const SparseVec& r) { return r.empty(); });
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  if (v.extent() > cols_) throw DimensionMismatch("vector length exceeds operator domain");
  std::vector<Entry> out;
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& r = rows_data_[i].entries();
    const auto& x = v.entries();
    Rational acc(0);
    auto it = r.begin();
    auto jt = x.begin();
    while (it != r.end() && jt != x.end()) {
      if (it->index < jt->index) {
        ++it;
      } else if (jt->index < it->index) {
        ++jt;
      } else {
        acc += it->value * jt->value;
        ++it;
        ++jt;
      }
    }
    if (!chow::is_zero(acc)) out.push_back({static_cast<Index>(i), std::move(acc)});
  }
  return SparseVec::from_entries(std::move(out));
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::vector<Entry>> buckets(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : rows_data_[i].entries()) buckets[e.index].push_back({static_cast<Index>(i), e.value});
  std::vector<SparseVec> row_data(cols_);
  for (std::size_t j = 0; j < cols_; ++j) row_data[j] = SparseVec::from_entries(std::move(buckets[j]));
  return from_rows(cols_, rows_, std::move(row_data));
}

SparseVec SparseMatrix::flatten() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : rows_data_[i].entries())
      out.push_back({static_cast<Index>(i * cols_ + e.index), e.value});
  return SparseVec::from_entries(std::move(out));
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : rows_data_[i].entries()) m(i, e.index) = e.value;
  return m;
}

SparseMatrix SparseMatrix::restrict_to(std::span<const Index> keep) const {
  std::unordered_map<Index, Index> position;
  for (std::size_t k = 0; k < keep.size(); ++k) position[keep[k]] = static_cast<Index>(k);
  std::vector<SparseVec> row_data(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    std::vector<Entry> out;
    for (const auto& e : rows_data_.at(keep[k]).entries()) {
      auto it = position.find(e.index);
      if (it != position.end()) out.push_back({it->second, e.value});
    }
    row_data[k] = SparseVec::from_entries(std::move(out));
  }
  return from_rows(keep.size(), keep.size(), std::move(row_data));
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("operator shapes differ");
  SparseMatrix out = a;
  for (std::size_t i = 0; i < a.rows_; ++i) out.rows_data_[i].axpy(Rational(1), b.rows_data_[i]);
  return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("operator shapes differ");
  SparseMatrix out = a;
  for (std::size_t i = 0; i < a.rows_; ++i) out.rows_data_[i].axpy(Rational(-1), b.rows_data_[i]);
  return out;
}

SparseMatrix operator*(const Rational& s, const SparseMatrix& a) {
  SparseMatrix out = a;
  for (auto& r : out.rows_data_) r *= s;
  return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) { return kernels::multiply(a, b); }

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) { return a * b - b * a; }

// ----------------------------------------------------------------- Subspace

Subspace Subspace::span(std::size_t ambient_dim, std::span<const SparseVec> vectors) {
  Subspace s(ambient_dim);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

Subspace Subspace::from_matrix(const Matrix& rows) {
  Subspace s(rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    std::vector<Rational> r(rows.cols());
    for (std::size_t j = 0; j < rows.cols(); ++j) r[j] = rows(i, j);
    s.insert(SparseVec::from_dense(r));
  }
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) s.insert(SparseVec::unit(static_cast<Index>(i)));
  return s;
}

void Subspace::check_dim(const SparseVec& v) const {
  if (v.extent() > ambient_dim_)
    throw DimensionMismatch("vector of length >= " + std::to_string(v.extent()) + " in ambient dimension " +
                            std::to_string(ambient_dim_));
}

SparseVec Subspace::reduce(const SparseVec& v) const {
  check_dim(v);
  SparseVec residual = v;
  // Rows are fully reduced, so the coefficient along each pivot is read off v directly.
  for (const auto& e : v.entries()) {
    auto it = pivot_row_.find(e.index);
    if (it != pivot_row_.end()) residual.axpy(-e.value, rows_[it->second]);
  }
  return residual;
}

bool Subspace::contains(const SparseVec& v) const { return reduce(v).empty(); }

bool Subspace::contains(std::span<const Rational> dense) const {
  if (dense.size() != ambient_dim_) throw DimensionMismatch("dense vector length differs from ambient dimension");
  return contains(SparseVec::from_dense(dense));
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("subspaces live in different ambient spaces");
  return std::all_of(other.rows_.begin(), other.rows_.end(), [this](const SparseVec& r) { return contains(r); });
}

bool Subspace::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  const Index pivot = r.entries().front().index;
  r *= 1 / r.entries().front().value;
  for (auto& row : rows_) {
    const Rational c = row.at(pivot);
    if (!chow::is_zero(c)) row.axpy(-c, r);
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  rows_.insert(rows_.begin() + pos, std::move(r));
  pivots_.insert(pivots_.begin() + pos, pivot);
  pivot_row_.clear();
  for (std::size_t i = 0; i < pivots_.size(); ++i) pivot_row_[pivots_[i]] = i;
  return true;
}

Matrix Subspace::to_matrix() const {
  Matrix m(rows_.size(), ambient_dim_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& e : rows_[i].entries()) m(i, e.index) = e.value;
  return m;
}

Subspace subspace_join(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("cannot join subspaces of different ambient spaces");
  Subspace out = a;
  for (const auto& r : b.basis()) out.insert(r);
  return out;
}

Subspace closure(const Subspace& start, std::span<const SparseMatrix> ops, ClosureStats* stats) {
  for (const auto& op : ops) {
    if (op.rows() != start.ambient_dim() || op.cols() != start.ambient_dim())
      throw DimensionMismatch("closure operator does not act on the ambient space");
  }
  Subspace s = start;
  std::vector<SparseVec> frontier = start.basis();
  std::size_t rounds = 0;
  while (!frontier.empty()) {
    std::vector<SparseVec> next;
    for (const auto& v : frontier) {
      for (const auto& op : ops) {
        SparseVec w = op.apply(v);
        if (s.insert(w)) next.push_back(std::move(w));
      }
    }
    if (!next.empty()) ++rounds;
    frontier = std::move(next);
  }
  if (stats) stats->iterations = rounds;
  return s;
}

std::vector<SparseMatrix> lie_closure(std::span<const SparseMatrix> gens) {
  std::vector<SparseMatrix> basis;
  if (gens.empty()) return basis;
  const std::size_t n = gens.front().rows();
  for (const auto& g : gens) {
    if (g.rows() != n || g.cols() != n) throw DimensionMismatch("Lie generators must be square of equal size");
  }
  Subspace span(n * n);
  for (const auto& g : gens) {
    if (span.insert(g.flatten())) basis.push_back(g);
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      SparseMatrix c = commutator(basis[i], basis[j]);
      if (span.insert(c.flatten())) basis.push_back(std::move(c));
    }
  }
  return basis;
}

}  // namespace chow
