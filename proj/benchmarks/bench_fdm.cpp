#include <benchmark/benchmark.h>

#include "pinn/fdm.hpp"
#include "pinn/oracles.hpp"

using namespace pinn;

static void BM_BurgersMarch(benchmark::State& state) {
  for (auto _ : state) {
    auto g = fdm::solve_burgers_fd({}, prob::BurgersParams{});
    benchmark::DoNotOptimize(g.raw().data());
  }
}
BENCHMARK(BM_BurgersMarch)->Unit(benchmark::kMillisecond);

static void BM_KdvMarch(benchmark::State& state) {
  for (auto _ : state) {
    auto g = fdm::solve_kdv_fd({}, prob::KdvParams{});
    benchmark::DoNotOptimize(g.raw().data());
  }
}
BENCHMARK(BM_KdvMarch)->Unit(benchmark::kMillisecond);

static void BM_Turing2Step(benchmark::State& state) {
  fdm::Turing2FdOptions opt;
  opt.t_final = 0.1;  // 100 steps per iteration
  for (auto _ : state) {
    auto g = fdm::solve_turing2_fd(opt, prob::Turing2Params{}, 7);
    benchmark::DoNotOptimize(g.raw().data());
  }
}
BENCHMARK(BM_Turing2Step)->Unit(benchmark::kMillisecond);

static void BM_Thomas(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> lo(n, -1.0), di(n, 4.0), up(n, -1.0), rhs(n, 1.0);
  for (auto _ : state) {
    auto x = fdm::thomas_solve(lo, di, up, rhs);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_Thomas)->Arg(100)->Arg(3000);

static void BM_BurgersOracle(benchmark::State& state) {
  const oracle::BurgersOracle u(1.0, 100);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(u(x, 0.05));
    x = x < 0.9 ? x + 1e-4 : 0.1;
  }
}
BENCHMARK(BM_BurgersOracle);
