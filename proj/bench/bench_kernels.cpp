// Serial vs OpenMP kernels on the pour circuit (depth from ZKDESK_BENCH_DEPTH, default 4).

#include <benchmark/benchmark.h>

#include <cstdlib>

#include "zkdesk/dap.hpp"
#include "zkdesk/kernels.hpp"
#include "zkdesk/qap.hpp"

using namespace zkdesk;

namespace {

struct Fixture {
  dap::DapParams params;
  dap::PourCircuit circuit;
  LagrangeBasis basis;
  std::vector<kernels::SparseColumn> columns;
  std::vector<Poly> polys;
  Scalar point;

  Fixture()
      : params(dap::DapParams::standard(depth())),
        circuit(dap::build_pour_circuit(params)),
        basis(LagrangeBasis::consecutive(params.domain(), circuit.cs.rows.size())),
        point(params.domain(), 123456789L) {
    columns.resize(circuit.cs.num_wires);
    for (std::size_t r = 0; r < circuit.cs.rows.size(); ++r) {
      for (const auto& [wire, c] : circuit.cs.rows[r].v) columns[wire].emplace_back(r, c);
    }
    polys = kernels::serial::interpolate_columns(basis, columns);
  }

  static unsigned depth() {
    const char* d = std::getenv("ZKDESK_BENCH_DEPTH");
    return d ? static_cast<unsigned>(std::atoi(d)) : 4;
  }
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

template <bool Parallel>
void interpolate(benchmark::State& st) {
  fx();
  kernels::set_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto r = Parallel ? kernels::omp::interpolate_columns(fx().basis, fx().columns)
                      : kernels::serial::interpolate_columns(fx().basis, fx().columns);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void weighted(benchmark::State& st) {
  fx();
  kernels::set_threads(static_cast<int>(st.range(0)));
  const auto& w = fx().circuit.witness.t;
  for (auto _ : st) {
    auto r = Parallel ? kernels::omp::weighted_sum(fx().polys, w) : kernels::serial::weighted_sum(fx().polys, w);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void violation(benchmark::State& st) {
  fx();
  kernels::set_threads(static_cast<int>(st.range(0)));
  const auto& rows = fx().circuit.cs.rows;
  const auto& t = fx().circuit.witness.t;
  for (auto _ : st) {
    auto r = Parallel ? kernels::omp::first_violation(rows, t) : kernels::serial::first_violation(rows, t);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void evaluate(benchmark::State& st) {
  fx();
  kernels::set_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto r = Parallel ? kernels::omp::eval_all(fx().polys, fx().point) : kernels::serial::eval_all(fx().polys, fx().point);
    benchmark::DoNotOptimize(r);
  }
}

void threads(benchmark::internal::Benchmark* b) {
  for (int t = 1; t <= kernels::max_threads(); t *= 2) b->Arg(t);
}

}  // namespace

BENCHMARK(interpolate<false>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(interpolate<true>)->Apply(threads)->Unit(benchmark::kMillisecond);
BENCHMARK(weighted<false>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(weighted<true>)->Apply(threads)->Unit(benchmark::kMillisecond);
BENCHMARK(violation<false>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(violation<true>)->Apply(threads)->Unit(benchmark::kMillisecond);
BENCHMARK(evaluate<false>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(evaluate<true>)->Apply(threads)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
