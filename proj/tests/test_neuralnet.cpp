#include <doctest.h>

#include <cmath>

#include "radopt/mlp.hpp"
#include "radopt/optimizer.hpp"
#include "radopt/rng.hpp"

using namespace radopt;

TEST_CASE("parameter count and flat layout") {
  const Mlp net({4, 64, 64, 2});
  CHECK(net.param_count() == (4 + 1) * 64 + (64 + 1) * 64 + (64 + 1) * 2);
  CHECK(net.input_size() == 4);
  CHECK(net.output_size() == 2);
}

TEST_CASE("forward: zero parameters give zero output") {
  const Mlp net({3, 5, 2});
  const Vec out = net.forward(zeros(net.param_count()), Vec{1.0, -2.0, 3.0});
  CHECK(out == zeros(2));
}

TEST_CASE("forward: single linear layer hand value") {
  // W=[[2]], b=[1], x=[3] -> 7 (output layer is linear)
  const Mlp net({1, 1});
  const Vec out = net.forward(Vec{2.0, 1.0}, Vec{3.0});
  CHECK(out[0] == doctest::Approx(7.0));
}

TEST_CASE("relu gates negative hidden pre-activations") {
  // hidden unit: w=1, b=0; output: w=1, b=0. Negative input is clamped.
  const Mlp net({1, 1, 1});
  const Vec params{1.0, 0.0, 1.0, 0.0};
  CHECK(net.forward(params, Vec{2.0})[0] == doctest::Approx(2.0));
  CHECK(net.forward(params, Vec{-2.0})[0] == doctest::Approx(0.0));
}

TEST_CASE("forward rejects shape mismatch") {
  const Mlp net({3, 2});
  CHECK_THROWS(net.forward(zeros(net.param_count()), Vec{1.0}));
}

TEST_CASE("backward: perfect predictions give zero loss and gradient") {
  const Mlp net({2, 2});
  Rng rng(1);
  const Vec params = net.init_params(rng);
  const Vec x{0.5, -1.0};
  const Vec target = net.forward(params, x);
  const auto [loss, grad] = net.backward(params, {x}, {target}, {LossKind::Mse, 1.0});
  CHECK(loss == doctest::Approx(0.0));
  CHECK(max_abs(grad) == doctest::Approx(0.0));
}

TEST_CASE("mse gradient is linear in the residual") {
  const Mlp net({2, 3});  // purely linear map
  Rng rng(2);
  const Vec params = net.init_params(rng);
  const Vec x{1.0, 2.0};
  const Vec pred = net.forward(params, x);
  const Vec t1 = add(pred, Vec{0.1, -0.2, 0.3});
  const Vec t2 = add(pred, Vec{0.2, -0.4, 0.6});
  const Vec g1 = net.backward(params, {x}, {t1}, {LossKind::Mse, 1.0}).second;
  const Vec g2 = net.backward(params, {x}, {t2}, {LossKind::Mse, 1.0}).second;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    CHECK(g2[i] == doctest::Approx(2.0 * g1[i]).epsilon(1e-12));
  }
}

TEST_CASE("backprop matches central differences on random nets") {
  Rng rng(7);
  for (const auto& shape : std::vector<std::vector<std::size_t>>{
           {8, 4, 2}, {3, 6, 6, 1}, {2, 5, 3}}) {
    const Mlp net(shape);
    Vec params = net.init_params(rng);
    std::vector<Vec> xs, ts;
    for (int s = 0; s < 3; ++s) {
      xs.push_back(rng.gaussian_vec(shape.front(), 0.0, 1.0));
      ts.push_back(rng.gaussian_vec(shape.back(), 0.0, 1.0));
    }
    for (LossKind kind : {LossKind::Mse, LossKind::Huber}) {
      const LossSpec loss{kind, 1.0};
      const Vec grad = net.backward(params, xs, ts, loss).second;
      for (int t = 0; t < 20; ++t) {
        const std::size_t i = rng.uniform_int(net.param_count());
        const double orig = params[i];
        params[i] = orig + 1e-5;
        const double fp = net.backward(params, xs, ts, loss).first;
        params[i] = orig - 1e-5;
        const double fm = net.backward(params, xs, ts, loss).first;
        params[i] = orig;
        const double fd = (fp - fm) / 2e-5;
        const double denom = std::max({std::fabs(grad[i]), std::fabs(fd), 1e-8});
        REQUIRE(std::fabs(fd - grad[i]) / denom < 1e-5);
      }
    }
  }
}

TEST_CASE("masked targets: copied predictions contribute nothing") {
  const Mlp net({2, 4, 2});
  Rng rng(9);
  const Vec params = net.init_params(rng);
  const Vec x{0.3, -0.6};
  const Vec pred = net.forward(params, x);
  // only output 0 carries a residual; output 1 is masked by copying pred
  Vec target = pred;
  target[0] += 0.5;
  const Vec g_masked = net.backward(params, {x}, {target}, {LossKind::Mse, 1.0}).second;
  // a phantom residual on output 1 must change the gradient
  Vec target2 = target;
  target2[1] += 0.5;
  const Vec g_full = net.backward(params, {x}, {target2}, {LossKind::Mse, 1.0}).second;
  CHECK(max_abs(sub(g_masked, g_full)) > 0.0);
}

TEST_CASE("init_params: zero biases, deterministic, fan-in scaled") {
  const Mlp net({100, 50, 1});
  Rng a(3), b(3);
  const Vec pa = net.init_params(a);
  CHECK(pa == net.init_params(b));
  // biases of the first layer sit right after the 100*50 weights
  for (std::size_t i = 100 * 50; i < 100 * 50 + 50; ++i) CHECK(pa[i] == 0.0);
  // weight std near sqrt(2/100)
  double ss = 0.0;
  for (std::size_t i = 0; i < 100 * 50; ++i) ss += pa[i] * pa[i];
  CHECK(std::sqrt(ss / (100 * 50)) == doctest::Approx(std::sqrt(0.02)).epsilon(0.05));
}

TEST_CASE("network_hamiltonian: rest energy at zero momentum") {
  OptimizerConfig cfg;
  cfg.algo = Algo::RAD1;
  cfg.alpha = 1e-3;
  cfg.beta1 = 0.9;
  cfg.delta = 1.0;
  const std::size_t n = 5;
  const OptState s = OptState::init(zeros(n));
  const double j = 2.5;
  const PhysicalParams ph = hyper_to_physics(cfg.alpha, cfg.beta1, cfg.delta);
  const double expected = static_cast<double>(n) * ph.c * ph.c * ph.m + j;
  CHECK(network_hamiltonian(s, cfg, j) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("network_hamiltonian never dips below rest energy plus J") {
  OptimizerConfig cfg;
  cfg.algo = Algo::RAD1;
  cfg.alpha = 1e-3;
  cfg.beta1 = 0.9;
  cfg.delta = 1.0;
  const PhysicalParams ph = hyper_to_physics(cfg.alpha, cfg.beta1, cfg.delta);
  Rng rng(11);
  OptState s = OptState::init(zeros(4));
  for (int k = 0; k < 200; ++k) {
    s = step(cfg, s, rng.gaussian_vec(4, 0.0, 1.0));
    const double j = rng.uniform();
    CHECK(network_hamiltonian(s, cfg, j) >= 4.0 * ph.c * ph.c * ph.m + j - 1e-9);
  }
}
