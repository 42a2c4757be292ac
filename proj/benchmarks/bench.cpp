#include <benchmark/benchmark.h>

#include <random>
#include <tuple>
#include <vector>

#include "lwp/constants.hpp"
#include "lwp/lorentz.hpp"
#include "lwp/oplab.hpp"
#include "lwp/perturb.hpp"
#include "lwp/verify.hpp"

namespace {

lwp::SimpleFunction make_function(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  std::vector<std::tuple<std::string, double, double>> cells;
  for (int i = 0; i < m; ++i) {
    cells.emplace_back("b" + std::to_string(i), 1.0 / m,
                       (rng() & 1 ? 1.0 : -1.0) * u(rng));
  }
  return lwp::SimpleFunction::build(cells);
}

void BM_lorentz_norm(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto f = make_function(m, 7);
  const lwp::LorentzSpace space(3.0, lwp::Weight::lebesgue());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwp::lorentz_norm(space, f));
  }
}
BENCHMARK(BM_lorentz_norm)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

void BM_make_ddot(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto f = make_function(m, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwp::make_ddot(f, 0.05));
  }
}
BENCHMARK(BM_make_ddot)->Arg(4)->Arg(12)->Arg(32);

void BM_verify_case1(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const lwp::LorentzSpace space(3.0, lwp::Weight::lebesgue());
  const auto k = lwp::case_constants(3.0);
  const auto x0 = lwp::random_unit_function(space, m, 13);
  const auto [x, trace] = lwp::make_ddot(x0, k.delta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwp::verify_case1(x, space, k));
  }
}
BENCHMARK(BM_verify_case1)->Arg(4)->Arg(12);

void BM_op_norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const lwp::LorentzSpace space(2.0, lwp::Weight::lebesgue());
  const lwp::DyadicGrid g(n);
  const auto T = lwp::rank_one_A(g).subtract_from_identity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lwp::op_norm_estimate(space, T, 1, 1e-6, 5));
  }
}
BENCHMARK(BM_op_norm)->Arg(8)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
