// Serial reference kernels against the OpenMP versions on a preferential
// graph. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <vector>

#include "rgm/graph.hpp"
#include "rgm/kernels.hpp"

namespace {

const rgm::DirectedGraph& graph(std::size_t n) {
  static std::size_t cached_n = 0;
  static rgm::DirectedGraph g;
  if (cached_n != n) {
    g = rgm::generate_synthetic(n, 10 * n, 42, rgm::GraphModel::preferential);
    cached_n = n;
  }
  return g;
}

void set_counters(benchmark::State& state, std::size_t per_iter) {
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * per_iter));
}

template <bool Parallel>
void apply(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  const auto n = g.node_count();
  std::vector<double> x(n, 1.0 / n), y(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      rgm::kernels::google_apply(g, 0.85, x, y);
    else
      rgm::kernels::serial::google_apply(g, 0.85, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  set_counters(state, g.edge_count());
}

template <bool Parallel>
void apply_transpose(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  const auto n = g.node_count();
  std::vector<double> x(n, 1.0 / n), y(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      rgm::kernels::google_apply_transpose(g, 0.85, x, y);
    else
      rgm::kernels::serial::google_apply_transpose(g, 0.85, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  set_counters(state, g.edge_count());
}

template <bool Parallel>
void apply_block(benchmark::State& state) {
  const auto& g = graph(static_cast<std::size_t>(state.range(0)));
  const auto n = g.node_count();
  const std::size_t k = 40;
  std::vector<double> x(n * k, 1.0 / n), y(n * k);
  for (auto _ : state) {
    if constexpr (Parallel)
      rgm::kernels::google_apply_block(g, 0.85, x, y, k);
    else
      rgm::kernels::serial::google_apply_block(g, 0.85, x, y, k);
    benchmark::DoNotOptimize(y.data());
  }
  set_counters(state, g.edge_count() * k);
}

template <bool Parallel>
void sum(benchmark::State& state) {
  const std::vector<double> x(static_cast<std::size_t>(state.range(0)), 0.5);
  for (auto _ : state) {
    double s = Parallel ? rgm::kernels::sum(x) : rgm::kernels::serial::sum(x);
    benchmark::DoNotOptimize(s);
  }
  set_counters(state, x.size());
}

}  // namespace

BENCHMARK(apply<false>)->Name("google_apply/serial")->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(apply<true>)->Name("google_apply/omp")->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(apply_transpose<false>)->Name("google_apply_transpose/serial")->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(apply_transpose<true>)->Name("google_apply_transpose/omp")->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(apply_block<false>)->Name("google_apply_block40/serial")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(apply_block<true>)->Name("google_apply_block40/omp")->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(sum<false>)->Name("sum/serial")->Arg(1 << 20)->Unit(benchmark::kMicrosecond);
BENCHMARK(sum<true>)->Name("sum/omp")->Arg(1 << 20)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
