// Serial reference vs OpenMP kernels on operators of the model algebra.

#include <benchmark/benchmark.h>

#include "chow/exterior.hpp"
#include "chow/kernels.hpp"
#include "chow/operators.hpp"

namespace {

using namespace chow;

// Column j of the Pontryagin multiplication by d^{g-1}.
kernels::ColumnFn pontryagin_column(const ModelContext& ctx, const ExtClass& a) {
  return [ctx, a](Index j) { return pontryagin(a, ExtClass::basis(ctx, j)).to_vector(); };
}

ExtClass d_power(const Polarization& pol, int n) {
  ExtClass out = ExtClass::unit(pol.context());
  for (int i = 0; i < n; ++i) out = wedge(out, pol.cls());
  return out;
}

template <class Build>
void build_columns(benchmark::State& state, Build build) {
  const auto ctx = ModelContext::make(static_cast<int>(state.range(0)));
  const Polarization pol = Polarization::standard(ctx);
  const auto col = pontryagin_column(ctx, d_power(pol, ctx.g() - 1));
  for (auto _ : state) benchmark::DoNotOptimize(build(ctx.dim(), ctx.dim(), col));
  state.counters["dim"] = static_cast<double>(ctx.dim());
}

template <class Mul>
void multiply_sl2(benchmark::State& state, Mul mul) {
  const auto ctx = ModelContext::make(static_cast<int>(state.range(0)));
  const Sl2Triple t = sl2_of(Polarization::standard(ctx));
  const SparseMatrix a = (t.e * t.f).matrix();
  const SparseMatrix b = fourier_op(Polarization::standard(ctx)).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
  state.counters["dim"] = static_cast<double>(ctx.dim());
}

void BM_BuildSerial(benchmark::State& s) { build_columns(s, kernels::serial::build_from_columns); }
void BM_BuildParallel(benchmark::State& s) { build_columns(s, kernels::parallel::build_from_columns); }
void BM_MultiplySerial(benchmark::State& s) { multiply_sl2(s, kernels::serial::multiply); }
void BM_MultiplyParallel(benchmark::State& s) { multiply_sl2(s, kernels::parallel::multiply); }

}  // namespace

BENCHMARK(BM_BuildSerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MultiplySerial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
