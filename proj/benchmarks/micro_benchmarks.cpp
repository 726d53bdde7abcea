#include <benchmark/benchmark.h>

#include "radopt/cartpole.hpp"
#include "radopt/hamiltonian.hpp"
#include "radopt/mlp.hpp"
#include "radopt/objective.hpp"
#include "radopt/optimizer.hpp"
#include "radopt/rng.hpp"

using namespace radopt;

namespace {

OptimizerConfig make_config(Algo algo) {
  OptimizerConfig cfg;
  cfg.algo = algo;
  cfg.alpha = 1e-3;
  cfg.zeta_schedule = ZetaSchedule::constant(1e-16);
  return cfg;
}

void BM_OptimizerStep(benchmark::State& state, Algo algo) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const OptimizerConfig cfg = make_config(algo);
  Rng rng(1);
  OptState s = OptState::init(rng.gaussian_vec(dim, 0.0, 1.0));
  const Vec g = rng.gaussian_vec(dim, 0.0, 1.0);
  for (auto _ : state) {
    s = step(cfg, s, g);
    benchmark::DoNotOptimize(s.theta.data());
  }
  state.SetItemsProcessed(state.iterations() * dim);
}

void BM_IntegratorStep(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Objective obj = make_quadratic(dim, 10.0);
  HamiltonianSystem sys;
  sys.potential = obj.value;
  sys.potential_grad = obj.grad;
  sys.kinetic = {KineticKind::Relativistic, 1.0, 1.0};
  sys.r = 0.1;
  Rng rng(1);
  PhasePoint z{rng.gaussian_vec(dim, 0.0, 1.0), zeros(dim)};
  for (auto _ : state) {
    z = step_second_order(sys, z, 0.01);
    benchmark::DoNotOptimize(z.q.data());
  }
  state.SetItemsProcessed(state.iterations() * dim);
}

void BM_MlpForward(benchmark::State& state) {
  const Mlp net({4, 64, 64, 2});
  Rng rng(1);
  const Vec params = net.init_params(rng);
  const Vec x = rng.gaussian_vec(4, 0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(params, x));
  }
}

void BM_MlpBackward(benchmark::State& state) {
  const Mlp net({4, 64, 64, 2});
  Rng rng(1);
  const Vec params = net.init_params(rng);
  std::vector<Vec> xs, ts;
  for (int i = 0; i < 64; ++i) {
    xs.push_back(rng.gaussian_vec(4, 0.0, 1.0));
    ts.push_back(rng.gaussian_vec(2, 0.0, 1.0));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.backward(params, xs, ts, {LossKind::Huber, 1.0}));
  }
}

void BM_CartPoleStep(benchmark::State& state) {
  CartPoleEnv env;
  Rng rng(1);
  env.reset(rng);
  int k = 0;
  for (auto _ : state) {
    if (env.done()) env.reset(rng);
    benchmark::DoNotOptimize(env.step(++k % 2));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_OptimizerStep, sgd, Algo::SGD)->Arg(64)->Arg(4096);
BENCHMARK_CAPTURE(BM_OptimizerStep, rad1, Algo::RAD1)->Arg(64)->Arg(4096);
BENCHMARK_CAPTURE(BM_OptimizerStep, adam, Algo::ADAM)->Arg(64)->Arg(4096);
BENCHMARK_CAPTURE(BM_OptimizerStep, rgd, Algo::RGD)->Arg(64)->Arg(4096);
BENCHMARK(BM_IntegratorStep)->Arg(64)->Arg(4096);
BENCHMARK(BM_MlpForward);
BENCHMARK(BM_MlpBackward);
BENCHMARK(BM_CartPoleStep);

BENCHMARK_MAIN();
