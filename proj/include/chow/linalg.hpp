#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "chow/rational.hpp"

namespace chow {

using Index = std::uint32_t;

struct Entry {
  Index index;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse rational vector: entries sorted by index, no stored zeros.
class SparseVec {
 public:
  SparseVec() = default;

  /// Takes entries that may be unsorted, duplicated or zero and normalizes them.
  static SparseVec from_entries(std::vector<Entry> entries);
  static SparseVec from_map(const std::map<Index, Rational>& terms);
  static SparseVec from_dense(std::span<const Rational> values);
  static SparseVec unit(Index i, Rational value = Rational(1));

  std::vector<Rational> to_dense(std::size_t n) const;

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  Rational at(Index i) const;
  /// Largest index + 1, or 0 for the zero vector.
  std::size_t extent() const { return entries_.empty() ? 0 : entries_.back().index + 1; }

  /// *this += a * x
  void axpy(const Rational& a, const SparseVec& x);
  SparseVec& operator*=(const Rational& a);

  friend SparseVec operator+(const SparseVec& x, const SparseVec& y);
  friend SparseVec operator-(const SparseVec& x, const SparseVec& y);
  friend SparseVec operator*(const Rational& a, const SparseVec& x);
  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Small dense rational matrix (the 2g x 2g matrices of forms and endomorphisms).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix scalar(std::size_t n, const Rational& s);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_antisymmetric() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, const Matrix& a);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  Matrix reduced;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; zero rows are dropped.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);
/// Throws SingularMatrix.
Matrix inverse(const Matrix& m);

/// Sparse matrix stored by rows. Used for every operator on the model algebra.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<SparseVec> row_data);
  static SparseMatrix from_columns(std::size_t rows, std::size_t cols, const std::vector<SparseVec>& col_data);
  static SparseMatrix from_dense(const Matrix& m);
  static SparseMatrix unflatten(const SparseVec& flat, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVec& row(std::size_t i) const { return rows_data_[i]; }
  const std::vector<SparseVec>& row_data() const { return rows_data_; }
  Rational at(std::size_t i, std::size_t j) const { return rows_data_[i].at(static_cast<Index>(j)); }

  std::size_t nnz() const;
  bool is_zero() const;

  SparseVec apply(const SparseVec& v) const;
  SparseMatrix transpose() const;
  /// Entry (i, j) goes to index i * cols + j.
  SparseVec flatten() const;
  Matrix to_dense() const;
  /// Keeps rows and columns listed in `keep` (in that order).
  SparseMatrix restrict_to(std::span<const Index> keep) const;

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator*(const Rational& s, const SparseMatrix& a);
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> rows_data_;
};

/// AB - BA
SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b);

/// A subspace of Q^n kept in reduced row echelon form, so two subspaces are
/// equal exactly when their bases are equal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, std::span<const SparseVec> vectors);
  static Subspace from_matrix(const Matrix& rows);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<SparseVec>& basis() const { return rows_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// v minus its projection along the pivot columns; zero iff v is in the span.
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const;
  bool contains(std::span<const Rational> dense) const;
  bool contains(const Subspace& other) const;

  /// Adds v to the span; returns true when the rank grows.
  bool insert(const SparseVec& v);

  Matrix to_matrix() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.rows_ == b.rows_;
  }

 private:
  void check_dim(const SparseVec& v) const;

  std::size_t ambient_dim_ = 0;
  std::vector<SparseVec> rows_;
  std::vector<Index> pivots_;
  std::unordered_map<Index, std::size_t> pivot_row_;
};

Subspace subspace_join(const Subspace& a, const Subspace& b);

struct ClosureStats {
  std::size_t iterations = 0;  // rounds that enlarged the subspace
};

/// Smallest subspace containing `start` and invariant under every operator.
Subspace closure(const Subspace& start, std::span<const SparseMatrix> ops, ClosureStats* stats = nullptr);

/// Linearly independent spanning set of the Lie algebra generated by `gens`.
std::vector<SparseMatrix> lie_closure(std::span<const SparseMatrix> gens);

}  // namespace chow
