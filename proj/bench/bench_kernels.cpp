#include <benchmark/benchmark.h>

#include <vector>

#include "mhd2/dynamics.hpp"
#include "mhd2/kernels.hpp"
#include "mhd2/symmetry.hpp"

using namespace mhd2;

namespace {

ComplexBuffer random_buffer(const GridSpec& g, std::uint64_t seed) {
  ComplexBuffer b(g.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      b[g.flat(i, j)] = Complex(counter_uniform(seed, 0, i, j) - 0.5, counter_uniform(seed, 1, i, j) - 0.5);
  return b;
}

struct ProductFixture {
  GridSpec g;
  std::vector<ComplexBuffer> in;
  std::vector<ComplexBuffer> out;
  explicit ProductFixture(int n) : g(GridSpec::make(n)) {
    for (int f = 0; f < 12; ++f) in.push_back(random_buffer(g, f));
    for (int f = 0; f < 4; ++f) out.emplace_back(g.size());
  }
  kernels::ProductInputs inputs() const {
    return {{in[0], in[1]}, {in[2], in[3]}, {{in[4], in[5]}, {in[6], in[7]}}, {{in[8], in[9]}, {in[10], in[11]}}};
  }
  kernels::ProductOutputs outputs() { return {{out[0], out[1]}, {out[2], out[3]}}; }
};

template <bool Parallel>
void BM_products(benchmark::State& state) {
  ProductFixture fx(static_cast<int>(state.range(0)));
  const auto in = fx.inputs();
  const auto out = fx.outputs();
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::products(in, out, fx.g.n);
    else kernels::serial::products(in, out, fx.g.n);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * fx.g.size());
}

template <bool Parallel>
void BM_derivative(benchmark::State& state) {
  const GridSpec g = GridSpec::make(static_cast<int>(state.range(0)));
  const auto in = random_buffer(g, 1);
  ComplexBuffer out(g.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::derivative(in, out, g.n, 2, 1);
    else kernels::serial::derivative(in, out, g.n, 2, 1);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * g.size());
}

template <bool Parallel>
void BM_leray(benchmark::State& state) {
  const GridSpec g = GridSpec::make(static_cast<int>(state.range(0)));
  auto c1 = random_buffer(g, 2), c2 = random_buffer(g, 3);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::leray(c1, c2, g.n);
    else kernels::serial::leray(c1, c2, g.n);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * g.size());
}

template <bool Parallel>
void BM_weighted_sum(benchmark::State& state) {
  const GridSpec g = GridSpec::make(static_cast<int>(state.range(0)));
  const auto a = random_buffer(g, 4);
  std::vector<double> w(g.size(), 1.5);
  for (auto _ : state) {
    double s = Parallel ? kernels::parallel::weighted_sum_sq(a, w, g.n) : kernels::serial::weighted_sum_sq(a, w, g.n);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * g.size());
}

void BM_rhs(benchmark::State& state) {
  const GridSpec g = GridSpec::make(static_cast<int>(state.range(0)));
  InitialDataSpec spec;
  const MHDState st = make_initial_data(spec, g);
  for (auto _ : state) benchmark::DoNotOptimize(rhs_perturbation(st));
}

}  // namespace

#define SIZES ->Arg(64)->Arg(128)->Arg(256)->Arg(512)
BENCHMARK(BM_products<false>) SIZES;
BENCHMARK(BM_products<true>) SIZES;
BENCHMARK(BM_derivative<false>) SIZES;
BENCHMARK(BM_derivative<true>) SIZES;
BENCHMARK(BM_leray<false>) SIZES;
BENCHMARK(BM_leray<true>) SIZES;
BENCHMARK(BM_weighted_sum<false>) SIZES;
BENCHMARK(BM_weighted_sum<true>) SIZES;
BENCHMARK(BM_rhs) SIZES;

BENCHMARK_MAIN();
