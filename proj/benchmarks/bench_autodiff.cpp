#include <benchmark/benchmark.h>

#include "pinn/network.hpp"
#include "pinn/problems.hpp"
#include "pinn/sampling.hpp"
#include "pinn/tape.hpp"
#include "pinn/trainer.hpp"

using namespace pinn;

static void BM_JetMul(benchmark::State& state) {
  ad::Jet a = ad::lift_input(0.7, true, 3);
  ad::Jet b = a * a + 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_JetMul);

static void BM_ForwardJets(benchmark::State& state) {
  net::MlpConfig cfg;
  cfg.input_dim = 2;
  cfg.hidden_layers = static_cast<int>(state.range(0));
  cfg.hidden_width = static_cast<int>(state.range(1));
  const auto params = net::init(cfg, 1);
  const ad::Jet in[2] = {ad::lift_input(0.3, true, 2), ad::lift_input(0.1, false, 2)};
  ad::Jet out[1];
  for (auto _ : state) {
    net::forward_jets(cfg, params, in, out);
    benchmark::DoNotOptimize(out[0]);
  }
}
BENCHMARK(BM_ForwardJets)->Args({4, 16})->Args({4, 32})->Args({8, 32});

static void BM_PointGradient(benchmark::State& state) {
  const auto& p = prob::find("burgers");
  net::MlpConfig mlp;
  mlp.input_dim = 2;
  mlp.hidden_layers = static_cast<int>(state.range(0));
  mlp.hidden_width = static_cast<int>(state.range(1));
  const auto params = net::init(mlp, 1);
  std::vector<double> grad(params.size(), 0.0);
  ad::Tape tape(params, p.max_order());
  for (auto _ : state) {
    tape.reset();
    const ad::Jet inx[2] = {ad::lift_input(0.4, true, 2), ad::lift_input(0.05, false, 2)};
    const auto ox = net::forward(tape, mlp, inx);
    const ad::Jet int_[2] = {ad::lift_input(0.4, false, 1), ad::lift_input(0.05, true, 1)};
    const auto ot = net::forward(tape, mlp, int_);
    const ad::Value f = prob::residual_burgers(
        tape.deriv_of(ox[0], 0), tape.deriv_of(ox[0], 1), tape.deriv_of(ot[0], 1),
        tape.deriv_of(ox[0], 2), 1.0);
    tape.accumulate_param_gradient(f * f, 1e-4, grad);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_PointGradient)->Args({4, 16})->Args({4, 32});

static void BM_LossAndGradient(benchmark::State& state) {
  const auto& p = prob::find("toy");
  auto cfg = train::preset("toy");
  net::MlpConfig mlp = cfg.mlp;
  mlp.input_dim = 2;
  mlp.output_dim = 1;
  const auto params = net::init(mlp, 1);
  const auto colloc = sampling::sample(p, 400, 400, 1);
  std::vector<double> grad(params.size(), 0.0);
  for (auto _ : state) {
    auto bd = train::loss_and_gradient(mlp, params, colloc, p, {1, 1, 1}, grad, 2);
    benchmark::DoNotOptimize(bd);
  }
}
BENCHMARK(BM_LossAndGradient);
