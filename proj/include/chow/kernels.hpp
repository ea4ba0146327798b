#pragma once

#include <cstddef>
#include <functional>

#include "chow/linalg.hpp"

// Data-parallel kernels behind the operator calculus. Each kernel has a plain
// serial version (the reference used by tests) and an OpenMP version; the
// unqualified entry points pick the OpenMP one when it is compiled in.
namespace chow::kernels {

using ColumnFn = std::function<SparseVec(Index)>;

namespace serial {

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
/// Matrix whose j-th column is column(j), for j < cols.
SparseMatrix build_from_columns(std::size_t rows, std::size_t cols, const ColumnFn& column);

}  // namespace serial

namespace parallel {

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix build_from_columns(std::size_t rows, std::size_t cols, const ColumnFn& column);

}  // namespace parallel

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix build_from_columns(std::size_t rows, std::size_t cols, const ColumnFn& column);

/// Number of threads the parallel kernels may use (1 without OpenMP).
int max_threads();

/// Row count below which the dispatching entry points stay serial.
std::size_t parallel_threshold();
void set_parallel_threshold(std::size_t rows);

}  // namespace chow::kernels
