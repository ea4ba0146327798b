#include "chow/kernels.hpp"

#include <atomic>
#include <exception>

#include "chow/errors.hpp"

#ifdef CHOW_HAVE_OPENMP
#include <omp.h>
#endif

namespace chow::kernels {

namespace {

std::atomic<std::size_t> g_threshold{64};

void check_product_shapes(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("operator product shapes differ");
}

// Row i of a*b, accumulated densely in `acc` (length b.cols()) and gathered via `touched`.
SparseVec product_row(const SparseVec& row, const SparseMatrix& b, std::vector<Rational>& acc,
                      std::vector<char>& mark, std::vector<Index>& touched) {
  touched.clear();
  for (const auto& e : row.entries()) {
    for (const auto& f : b.row(e.index).entries()) {
      if (!mark[f.index]) {
        mark[f.index] = 1;
        touched.push_back(f.index);
        acc[f.index] = e.value * f.value;
      } else {
        acc[f.index] += e.value * f.value;
      }
    }
  }
  std::vector<Entry> out;
  out.reserve(touched.size());
  for (Index j : touched) {
    if (!is_zero(acc[j])) out.push_back({j, acc[j]});
    mark[j] = 0;
  }
  return SparseVec::from_entries(std::move(out));
}

}  // namespace

namespace serial {

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  check_product_shapes(a, b);
  std::vector<SparseVec> rows(a.rows());
  std::vector<Rational> acc(b.cols());
  std::vector<char> mark(b.cols(), 0);
  std::vector<Index> touched;
  for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = product_row(a.row(i), b, acc, mark, touched);
  return SparseMatrix::from_rows(a.rows(), b.cols(), std::move(rows));
}

SparseMatrix build_from_columns(std::size_t rows, std::size_t cols, const ColumnFn& column) {
  std::vector<SparseVec> columns(cols);
  for (std::size_t j = 0; j < cols; ++j) columns[j] = column(static_cast<Index>(j));
  return SparseMatrix::from_columns(rows, cols, columns);
}

}  // namespace serial

namespace parallel {

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  check_product_shapes(a, b);
  std::vector<SparseVec> rows(a.rows());
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel
  {
    std::vector<Rational> acc(b.cols());
    std::vector<char> mark(b.cols(), 0);
    std::vector<Index> touched;
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = product_row(a.row(i), b, acc, mark, touched);
  }
  return SparseMatrix::from_rows(a.rows(), b.cols(), std::move(rows));
}

SparseMatrix build_from_columns(std::size_t rows, std::size_t cols, const ColumnFn& column) {
  std::vector<SparseVec> columns(cols);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(cols);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    try {
      columns[j] = column(static_cast<Index>(j));
    } catch (...) {
#pragma omp critical(chow_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return SparseMatrix::from_columns(rows, cols, columns);
}

}  // namespace parallel

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (max_threads() > 1 && a.rows() >= g_threshold.load()) return parallel::multiply(a, b);
  return serial::multiply(a, b);
}

SparseMatrix build_from_columns(std::size_t rows, std::size_t cols, const ColumnFn& column) {
  if (max_threads() > 1 && cols >= g_threshold.load()) return parallel::build_from_columns(rows, cols, column);
  return serial::build_from_columns(rows, cols, column);
}

int max_threads() {
#ifdef CHOW_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::size_t parallel_threshold() { return g_threshold.load(); }

void set_parallel_threshold(std::size_t rows) { g_threshold.store(rows); }

}  // namespace chow::kernels
