// Serial reference vs OpenMP kernels on the desk-sized problem (1024 x 513).
#include <benchmark/benchmark.h>

#include <random>

#include "nfbt/kernels.hpp"
#include "nfbt/training.hpp"

using namespace nfbt;

namespace {

struct Problem {
  std::vector<double> rows, cols;
  ComplexMatrix a, b;
  Problem(std::size_t r, std::size_t c) : rows(r), cols(c), a(r, c), b(r, c) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& x : rows) x = 1e3 * u(rng);
    for (auto& x : cols) x = 1e-2 * u(rng);
    kernels::serial::fill_phase_matrix(rows, cols, {}, 1.0, a);
    kernels::serial::fill_phase_matrix(rows, cols, {}, 0.5, b);
  }
};

const Problem& problem() {
  static const Problem p(1024, 513);
  return p;
}

template <Execution Ex>
void BM_FillPhase(benchmark::State& state) {
  const auto& p = problem();
  ComplexMatrix out(p.rows.size(), p.cols.size());
  for (auto _ : state) {
    kernels::fill_phase_matrix(Ex, p.rows, p.cols, {}, 1.0, out);
    benchmark::DoNotOptimize(out(0, 0));
  }
}

template <Execution Ex>
void BM_RowProducts(benchmark::State& state) {
  const auto& p = problem();
  CVector out(p.rows.size());
  for (auto _ : state) {
    kernels::row_products(Ex, p.a, p.b, out);
    benchmark::DoNotOptimize(out[0]);
  }
}

template <Execution Ex>
void BM_BroadcastProducts(benchmark::State& state) {
  const auto& p = problem();
  const CVector row(p.a.row(0).begin(), p.a.row(0).end());
  CVector out(p.rows.size());
  for (auto _ : state) {
    kernels::broadcast_products(Ex, row, p.b, out);
    benchmark::DoNotOptimize(out[0]);
  }
}

template <Execution Ex>
void BM_FullTraining(benchmark::State& state) {
  static const auto setup = make_training_setup(validate_config(SystemConfig{}), PathModel::Exact,
                                                PathModel::Planar, Ex);
  const auto user = PolarPoint::from_range_angle(30.0, 0.2);
  const auto channels = make_training_channels(setup, user);
  for (auto _ : state) benchmark::DoNotOptimize(run_full_training(setup, channels, 1).angle);
}

}  // namespace

BENCHMARK_TEMPLATE(BM_FillPhase, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_FillPhase, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_RowProducts, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_RowProducts, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_BroadcastProducts, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_BroadcastProducts, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_FullTraining, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_FullTraining, Execution::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
