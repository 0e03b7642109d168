#include <benchmark/benchmark.h>

#include <vector>

#include "cobos/kernels.hpp"
#include "cobos/model.hpp"

using namespace cobos;

namespace {

// Full model at half filling of two species: dimension C(d, d/2)^2.
ModelParams bench_params(int d) {
  return {.J = 1.0, .U = 4.0, .gamma = 0.5, .sites = d, .n_a = d / 2, .n_b = d / 2};
}

std::vector<Complex> ramp(std::size_t n) {
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = {1.0 / (1.0 + i), 0.5 / (2.0 + i)};
  return x;
}

template <void (*Kernel)(const SparseOperator&, std::span<const Complex>, std::span<Complex>)>
void stored(benchmark::State& state) {
  const SparseOperator H = build_full_hamiltonian(bench_params(static_cast<int>(state.range(0))));
  const auto x = ramp(H.dim());
  std::vector<Complex> y(H.dim());
  for (auto _ : state) {
    Kernel(H, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["dim"] = static_cast<double>(H.dim());
  state.counters["threads"] = kernels::max_threads();
}

template <void (*Kernel)(const HamiltonianRules&, std::span<const Complex>, std::span<Complex>)>
void matrix_free(benchmark::State& state) {
  const HamiltonianRules rules = full_hamiltonian_rules(bench_params(static_cast<int>(state.range(0))));
  const SparseOperator H = assemble(rules);
  const auto x = ramp(H.dim());
  std::vector<Complex> y(H.dim());
  for (auto _ : state) {
    Kernel(rules, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["dim"] = static_cast<double>(H.dim());
  state.counters["threads"] = kernels::max_threads();
}

}  // namespace

BENCHMARK(stored<kernels::matvec_serial>)->Name("stored/serial")->Arg(8)->Arg(10);
BENCHMARK(stored<kernels::matvec_parallel>)->Name("stored/parallel")->Arg(8)->Arg(10);
BENCHMARK(matrix_free<kernels::matrix_free_serial>)->Name("matrix_free/serial")->Arg(8)->Arg(10);
BENCHMARK(matrix_free<kernels::matrix_free_parallel>)->Name("matrix_free/parallel")->Arg(8)->Arg(10);

BENCHMARK_MAIN();
