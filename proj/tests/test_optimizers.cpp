#include <doctest.h>

#include <cmath>
#include <limits>

#include "radopt/hamiltonian.hpp"
#include "radopt/objective.hpp"
#include "radopt/optimizer.hpp"
#include "radopt/rng.hpp"

using namespace radopt;

namespace {
constexpr double kPi = 3.14159265358979323846;

OptimizerConfig base(Algo algo) {
  OptimizerConfig cfg;
  cfg.algo = algo;
  cfg.alpha = 1e-3;
  cfg.beta1 = 0.9;
  cfg.beta2 = 0.999;
  cfg.delta = 1.0;
  return cfg;
}
}  // namespace

TEST_CASE("algo name round-trip") {
  for (Algo a : {Algo::SGD, Algo::HB, Algo::NAG, Algo::DLPF, Algo::RGD,
                 Algo::RAD1_ORIGINAL, Algo::RAD1, Algo::RAD2, Algo::ADAM,
                 Algo::ADAM_ORIGINAL}) {
    CHECK(algo_from_name(algo_name(a)) == a);
  }
  CHECK_THROWS(algo_from_name("bogus"));
}

TEST_CASE("RAD1 single-step hand evaluation") {
  OptimizerConfig cfg = base(Algo::RAD1);
  cfg.zeta_schedule = ZetaSchedule::constant(1e-3);
  const OptState s1 = step(cfg, OptState::init(Vec{0.0}), Vec{1.0});
  // v1=0.1, y1=1e-3, bias-corrected g=1, alpha_0=1e-3*sqrt(1e-3)/sqrt(2e-3)
  CHECK(s1.v[0] == doctest::Approx(0.1));
  CHECK(s1.y[0] == doctest::Approx(1e-3));
  CHECK(s1.theta[0] == doctest::Approx(-7.0711e-4).epsilon(1e-4));
  CHECK(s1.theta[0] == doctest::Approx(-1e-3 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s1.k == 1);
}

TEST_CASE("zero gradient is a fixed point for every algorithm") {
  for (Algo a : {Algo::SGD, Algo::HB, Algo::NAG, Algo::DLPF, Algo::RGD,
                 Algo::RAD1_ORIGINAL, Algo::RAD1, Algo::RAD2, Algo::ADAM,
                 Algo::ADAM_ORIGINAL}) {
    const OptState s0 = OptState::init(Vec{1.0, -2.0});
    const OptState s1 = step(base(a), s0, zeros(2));
    CHECK(s1.theta == s0.theta);
  }
}

TEST_CASE("closed-form single steps: SGD/HB/NAG/DLPF/RGD/RAD2") {
  const Vec g{2.0};
  const double a = 1e-3, b1 = 0.9, d = 1.0;
  const OptState s0 = OptState::init(Vec{0.0});
  const double v1 = (1 - b1) * g[0];  // 0.2

  CHECK(step(base(Algo::SGD), s0, g).theta[0] == doctest::Approx(-a * g[0]));
  CHECK(step(base(Algo::HB), s0, g).theta[0] == doctest::Approx(-a * v1));
  CHECK(step(base(Algo::NAG), s0, g).theta[0] ==
        doctest::Approx(-a * 0.5 * (b1 * v1 + (1 - b1) * g[0])));
  CHECK(step(base(Algo::DLPF), s0, g).theta[0] ==
        doctest::Approx(-a * 0.5 * (b1 + 1) * v1));
  CHECK(step(base(Algo::RGD), s0, g).theta[0] ==
        doctest::Approx(-a * v1 / std::sqrt(d * d * v1 * v1 + 1)));
  CHECK(step(base(Algo::RAD2), s0, g).theta[0] ==
        doctest::Approx(-(a / 2) * v1 *
                        (1 / std::sqrt(d * d * v1 * v1 + 1) +
                         1 / std::sqrt(d * d * v1 * v1 + 1 / (b1 * b1)))));
}

TEST_CASE("ADAM_ORIGINAL differs from ADAM (eps placement)") {
  OptimizerConfig adam = base(Algo::ADAM);
  adam.eps = 1e-2;  // large eps magnifies the placement difference
  OptimizerConfig orig = adam;
  orig.algo = Algo::ADAM_ORIGINAL;
  const OptState s0 = OptState::init(Vec{0.0});
  const Vec g{1.0};
  const double inside = step(adam, s0, g).theta[0];
  const double outside = step(orig, s0, g).theta[0];
  CHECK(inside != doctest::Approx(outside).epsilon(1e-6));
  // hand value for the eps-outside form: alpha * vhat / (sqrt(yhat) + eps)
  CHECK(outside == doctest::Approx(-1e-3 * 1.0 / (1.0 + 1e-2)));
}

TEST_CASE("ADAM degeneracy of RAD1 over a long stream") {
  OptimizerConfig rad = base(Algo::RAD1);
  rad.zeta_schedule = ZetaSchedule::constant(1e-16);
  OptimizerConfig adam = base(Algo::ADAM);
  adam.eps = 1e-16;

  Rng rng(3);
  OptState a = OptState::init(rng.gaussian_vec(4, 0.0, 1.0));
  OptState b = a;
  for (int k = 0; k < 1000; ++k) {
    const Vec g = rng.gaussian_vec(4, 0.0, 1.0);
    a = step(rad, a, g);
    b = step(adam, b, g);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(a.theta[i] ==
            doctest::Approx(b.theta[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("speed bounds under random and exploding gradients") {
  OptimizerConfig orig = base(Algo::RAD1_ORIGINAL);
  orig.alpha = 0.1;
  orig.delta = 4.0;
  OptimizerConfig rgd = orig;
  rgd.algo = Algo::RGD;
  const double bound = orig.alpha / orig.delta * (1 + 1e-12);

  Rng rng(8);
  OptState a = OptState::init(rng.gaussian_vec(5, 0.0, 1.0));
  OptState b = a;
  for (int k = 0; k < 10000; ++k) {
    Vec g = rng.gaussian_vec(5, 0.0, 10.0);
    if (k % 53 == 0) g = scale(g, 1e8);
    const OptState a1 = step(orig, a, g);
    const OptState b1 = step(rgd, b, g);
    REQUIRE(max_abs(sub(a1.theta, a.theta)) <= bound);
    REQUIRE(norm(sub(b1.theta, b.theta)) <= bound);
    a = a1;
    b = b1;
  }
}

TEST_CASE("y stays elementwise nonnegative") {
  OptimizerConfig cfg = base(Algo::RAD1);
  Rng rng(9);
  OptState s = OptState::init(zeros(3));
  for (int k = 0; k < 500; ++k) {
    s = step(cfg, s, rng.gaussian_vec(3, 0.0, 5.0));
    for (double yi : s.y) REQUIRE(yi >= 0.0);
  }
}

TEST_CASE("RAD1 adapts per coordinate, RGD does not") {
  // Gradient scales (100, 0.01): effective learning rates |dtheta_i / g_i|.
  OptimizerConfig rad = base(Algo::RAD1);
  OptimizerConfig rgd = base(Algo::RGD);
  const Vec g{100.0, 0.01};
  OptState sr = OptState::init(zeros(2));
  OptState sg = OptState::init(zeros(2));
  for (int k = 0; k < 50; ++k) {
    sr = step(rad, sr, g);
    sg = step(rgd, sg, g);
  }
  const OptState sr1 = step(rad, sr, g);
  const OptState sg1 = step(rgd, sg, g);
  const double rad_lr0 = std::fabs((sr1.theta[0] - sr.theta[0]) / g[0]);
  const double rad_lr1 = std::fabs((sr1.theta[1] - sr.theta[1]) / g[1]);
  const double rgd_lr0 = std::fabs((sg1.theta[0] - sg.theta[0]) / g[0]);
  const double rgd_lr1 = std::fabs((sg1.theta[1] - sg.theta[1]) / g[1]);
  CHECK(rad_lr1 > 10.0 * rad_lr0);  // small-gradient coordinate gets a larger lr
  CHECK(rgd_lr0 == doctest::Approx(rgd_lr1).epsilon(1e-12));
}

TEST_CASE("beta1 = 0 degenerate RAD1: v equals the gradient") {
  OptimizerConfig cfg = base(Algo::RAD1);
  cfg.beta1 = 0.0;
  const OptState s1 = step(cfg, OptState::init(Vec{0.0}), Vec{3.0});
  CHECK(s1.v[0] == doctest::Approx(3.0));
}

TEST_CASE("config validation rejects out-of-range parameters") {
  OptimizerConfig cfg = base(Algo::RAD1);
  cfg.alpha = -1.0;
  CHECK_THROWS(cfg.validate());
  cfg = base(Algo::RAD1);
  cfg.beta1 = 1.0;
  CHECK_THROWS(cfg.validate());
  cfg = base(Algo::RAD1);
  cfg.delta = 0.0;
  CHECK_THROWS(cfg.validate());
  CHECK_NOTHROW(base(Algo::RAD1).validate());
}

TEST_CASE("step rejects mismatched or non-finite gradients") {
  const OptState s0 = OptState::init(zeros(2));
  CHECK_THROWS(step(base(Algo::SGD), s0, Vec{1.0}));
  CHECK_THROWS(step(base(Algo::SGD), s0,
                    Vec{1.0, std::numeric_limits<double>::quiet_NaN()}));
}

TEST_CASE("zeta schedule values and monotonicity") {
  const double b2 = 0.999;

  const ZetaSchedule c = ZetaSchedule::constant(1e-16);
  CHECK(c.value(0, b2) == 1e-16);
  CHECK(c.value(123456, b2) == 1e-16);
  CHECK(c.switch_step(b2) == 0);

  const ZetaSchedule z = ZetaSchedule::annealed(12.0 * kPi, 10000);
  CHECK(z.value(0, b2) == doctest::Approx(std::exp(-12.0 * kPi)));
  CHECK(z.value(10000, b2) ==
        doctest::Approx(1.0 - std::pow(b2, 10001)).epsilon(1e-12));

  double prev = 0.0;
  for (std::int64_t k = 0; k <= 10000; k += 10) {
    const double v = z.value(k, b2);
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
    REQUIRE(v >= prev);
    prev = v;
  }
  const std::int64_t ks = z.switch_step(b2);
  CHECK(ks <= 10000);
  CHECK(z.value(ks, b2) == doctest::Approx(1.0 - std::pow(b2, ks + 1)));
  if (ks > 0) {
    CHECK(z.value(ks - 1, b2) <
          1.0 - std::pow(b2, ks));  // ramp still below ceiling just before
  }
}

TEST_CASE("physics map hand values and identities") {
  // h=1, r=ln2, m=2, c=1 -> beta1=0.5, alpha=1, delta=1
  const HyperParams hp = physics_to_hyper({1.0, std::log(2.0), 2.0, 1.0});
  CHECK(hp.beta1 == doctest::Approx(0.5));
  CHECK(hp.alpha == doctest::Approx(1.0));
  CHECK(hp.delta == doctest::Approx(1.0));

  // hyper_to_physics(1e-3, 0.9, 1) -> r ~ 0.10536, m = 1e4, c = 1e-3
  const PhysicalParams ph = hyper_to_physics(1e-3, 0.9, 1.0);
  CHECK(ph.r == doctest::Approx(0.10536).epsilon(1e-4));
  CHECK(ph.m == doctest::Approx(1e4));
  CHECK(ph.c == doctest::Approx(1e-3));
  CHECK(ph.h == 1.0);

  // round-trip identity
  const HyperParams rt = physics_to_hyper(ph);
  CHECK(rt.alpha == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(rt.beta1 == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(rt.delta == doctest::Approx(1.0).epsilon(1e-12));

  // algebraic identity delta*c*m*(1-beta1) = h
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    PhysicalParams p{0.1 + rng.uniform(), 0.1 + rng.uniform(), 0.5 + rng.uniform(),
                     0.5 + rng.uniform()};
    const HyperParams q = physics_to_hyper(p);
    CHECK(q.delta * p.c * p.m * (1.0 - q.beta1) == doctest::Approx(p.h).epsilon(1e-12));
  }
}

TEST_CASE("momenta_from_v") {
  CHECK(momenta_from_v(Vec{0.0}, 0.9) == Vec{0.0});
  CHECK(momenta_from_v(Vec{0.1}, 0.9)[0] == doctest::Approx(-1.0));
  // forward map recovers v
  const Vec p = momenta_from_v(Vec{0.37, -0.2}, 0.8);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(-p[i] * (1.0 - 0.8) == doctest::Approx(Vec{0.37, -0.2}[i]).epsilon(1e-12));
  }
}

TEST_CASE("convergence condition boundary cases") {
  OptimizerConfig cfg = base(Algo::RAD1);
  cfg.delta = 1.0;

  cfg.alpha = 0.05;
  cfg.beta2 = 0.9999;
  CHECK(check_convergence_conditions(cfg, 1.0, 1.0, 0.01).alpha_ok);  // 0.05 <= 0.05

  cfg.alpha = 1e-4;
  cfg.beta2 = 0.999;
  const ConvergenceReport fail = check_convergence_conditions(cfg, 1.0, 1.0, 0.01);
  CHECK(!fail.beta2_ok);
  CHECK(fail.beta2_bound == doctest::Approx(0.999375).epsilon(1e-12));

  cfg.alpha = 100.0;
  cfg.beta2 = 0.9999999;
  CHECK(check_convergence_conditions(cfg, 1e-12, 1.0, 1.0).alpha_ok);
}

TEST_CASE("HB trajectory closes with the first-order integrator") {
  const Objective obj = make_quadratic(2, 10.0);
  const double alpha = 0.01, beta1 = 0.9;
  const PhysicalParams phys = hyper_to_physics(alpha, beta1, 1.0);

  HamiltonianSystem sys;
  sys.potential = obj.value;
  sys.potential_grad = obj.grad;
  sys.kinetic = {KineticKind::Classical, phys.m, phys.c};
  sys.r = phys.r;

  OptimizerConfig hb = base(Algo::HB);
  hb.alpha = alpha;

  PhasePoint z{Vec{1.0, -2.0}, zeros(2)};
  OptState s = OptState::init(z.q);
  for (int k = 0; k < 1000; ++k) {
    z = step_first_order(sys, z, phys.h);
    s = step(hb, s, obj.grad(s.theta));
    REQUIRE(max_abs(sub(s.theta, z.q)) < 1e-10);
  }
}

TEST_CASE("DLPF trajectory closes with the second-order integrator") {
  const Objective obj = make_quadratic(2, 10.0);
  const double alpha = 0.01, beta1 = 0.9;
  const PhysicalParams phys = hyper_to_physics(alpha, beta1, 1.0);

  HamiltonianSystem sys;
  sys.potential = obj.value;
  sys.potential_grad = obj.grad;
  sys.kinetic = {KineticKind::Classical, phys.m, phys.c};
  sys.r = phys.r;

  OptimizerConfig dlpf = base(Algo::DLPF);
  dlpf.alpha = alpha;

  PhasePoint z{Vec{1.0, -2.0}, zeros(2)};
  OptState s = OptState::init(z.q);
  const double sb1 = std::sqrt(beta1);
  for (int k = 0; k < 1000; ++k) {
    z = step_second_order(sys, z, phys.h);
    s = step(dlpf, s, obj.grad(s.theta));
    for (std::size_t i = 0; i < 2; ++i) {
      REQUIRE(std::fabs(s.theta[i] - (z.q[i] + 0.5 * phys.h * sb1 * z.p[i] / phys.m)) <
              1e-10);
    }
  }
}
