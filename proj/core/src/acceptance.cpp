#include "radopt/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "radopt/dqn.hpp"
#include "radopt/experiment.hpp"
#include "radopt/hamiltonian.hpp"
#include "radopt/mlp.hpp"
#include "radopt/objective.hpp"
#include "radopt/optimizer.hpp"
#include "radopt/rng.hpp"

namespace radopt {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// --- 1. ADAM degeneracy -----------------------------------------------------

CriterionResult adam_degeneracy() {
  OptimizerConfig rad;
  rad.algo = Algo::RAD1;
  rad.alpha = 1e-3;
  rad.beta1 = 0.9;
  rad.beta2 = 0.999;
  rad.delta = 1.0;
  rad.zeta_schedule = ZetaSchedule::constant(1e-16);

  OptimizerConfig adam = rad;
  adam.algo = Algo::ADAM;
  adam.eps = 1e-16;

  const std::size_t dim = 8;
  double worst = 0.0;
  for (std::uint64_t stream = 0; stream < 10; ++stream) {
    Rng rng(1000 + stream);
    Vec theta0 = rng.gaussian_vec(dim, 0.0, 1.0);
    OptState a = OptState::init(theta0);
    OptState b = OptState::init(theta0);
    for (int k = 0; k < 1000; ++k) {
      const Vec g = rng.gaussian_vec(dim, 0.0, 1.0);
      a = step(rad, a, g);
      b = step(adam, b, g);
      for (std::size_t i = 0; i < dim; ++i) {
        const double denom = std::max(std::fabs(b.theta[i]), 1e-300);
        worst = std::max(worst, std::fabs(a.theta[i] - b.theta[i]) / denom);
      }
    }
  }
  const bool ok = worst < 1e-12;
  return {1, "ADAM degeneracy: RAD1(delta=1, zeta=1e-16) == ADAM", ok,
          fmt("max relative trajectory deviation %.3e (< 1e-12)", worst), 0.0};
}

// --- 2. Speed bounds ---------------------------------------------------------

CriterionResult speed_bounds() {
  OptimizerConfig orig;
  orig.algo = Algo::RAD1_ORIGINAL;
  orig.alpha = 0.05;
  orig.beta1 = 0.9;
  orig.delta = 2.0;

  OptimizerConfig rgd = orig;
  rgd.algo = Algo::RGD;

  const std::size_t dim = 6;
  const double bound = orig.alpha / orig.delta;
  double worst_elem = 0.0, worst_l2 = 0.0;
  Rng rng(42);
  OptState a = OptState::init(rng.gaussian_vec(dim, 0.0, 1.0));
  OptState b = a;
  for (int k = 0; k < 10000; ++k) {
    // Heavy-tailed stream: occasional huge gradients must stay bounded.
    Vec g = rng.gaussian_vec(dim, 0.0, 1.0);
    if (k % 97 == 0) g = scale(g, 1e6);
    const OptState a2 = step(orig, a, g);
    const OptState b2 = step(rgd, b, g);
    worst_elem = std::max(worst_elem, max_abs(sub(a2.theta, a.theta)));
    worst_l2 = std::max(worst_l2, norm(sub(b2.theta, b.theta)));
    a = a2;
    b = b2;
  }
  const double tol = bound * (1.0 + 1e-12);
  const bool ok = worst_elem <= tol && worst_l2 <= tol;
  return {2, "Speed bounds: RAD1_ORIGINAL elementwise, RGD L2 <= alpha/delta", ok,
          fmt("max |dtheta_i| %.6e, max ||dtheta|| %.6e vs bound %.6e", worst_elem,
              worst_l2, bound),
          0.0};
}

// --- 3. Conformal symplecticity ----------------------------------------------

CriterionResult conformal_symplecticity() {
  HamiltonianSystem sys;
  sys.potential = [](const Vec& q) { return 0.5 * dot(q, q); };
  sys.potential_grad = [](const Vec& q) { return q; };
  sys.kinetic = KineticEnergy{KineticKind::Classical, 1.0, 1.0};

  double worst = 0.0;
  for (double r : {0.0, 0.01, 0.1, 1.0}) {
    for (double h : {0.001, 0.01, 0.1}) {
      sys.r = r;
      const double expected = std::exp(-r * h);
      for (auto order : {IntegratorOrder::First, IntegratorOrder::Second}) {
        const PhasePoint z{Vec{0.7}, Vec{-0.3}};
        const double det = phase_area_contraction(sys, z, h, order);
        worst = std::max(worst, std::fabs(det - expected));
      }
    }
  }
  const bool ok = worst < 1e-5;
  return {3, "Conformal symplecticity: Jacobian det == e^{-rh} on (r,h) grid", ok,
          fmt("max |det - e^(-rh)| %.3e (< 1e-5)", worst), 0.0};
}

// --- 4. Physics <-> algorithm closure ----------------------------------------

CriterionResult physics_closure() {
  const Objective obj = make_quadratic(2, 10.0);
  const double alpha = 0.01, beta1 = 0.9, delta = 1.0;
  const PhysicalParams phys = hyper_to_physics(alpha, beta1, delta);

  HamiltonianSystem sys;
  sys.potential = obj.value;
  sys.potential_grad = obj.grad;
  sys.kinetic = KineticEnergy{KineticKind::Classical, phys.m, phys.c};
  sys.r = phys.r;

  OptimizerConfig hb;
  hb.algo = Algo::HB;
  hb.alpha = alpha;
  hb.beta1 = beta1;

  OptimizerConfig dlpf = hb;
  dlpf.algo = Algo::DLPF;

  const Vec theta0{1.5, -0.5};

  // HB matches the first-order integrator started at p = 0.
  double worst_hb = 0.0;
  {
    PhasePoint z{theta0, zeros(2)};
    OptState s = OptState::init(theta0);
    for (int k = 0; k < 1000; ++k) {
      z = step_first_order(sys, z, phys.h);
      s = step(hb, s, obj.grad(s.theta));
      worst_hb = std::max(worst_hb, max_abs(sub(s.theta, z.q)));
    }
  }

  // DLPF matches the second-order integrator: its iterate k corresponds to
  // the integrator's staggered point q_k + (h/2) sqrt(beta1) p_k / m.
  double worst_dlpf = 0.0;
  {
    PhasePoint z{theta0, zeros(2)};
    OptState s = OptState::init(theta0);  // p0 = 0 makes the staggered start theta0
    const double sqrt_b1 = std::sqrt(beta1);
    for (int k = 0; k < 1000; ++k) {
      z = step_second_order(sys, z, phys.h);
      s = step(dlpf, s, obj.grad(s.theta));
      Vec staggered(2);
      for (std::size_t i = 0; i < 2; ++i) {
        staggered[i] = z.q[i] + 0.5 * phys.h * sqrt_b1 * z.p[i] / phys.m;
      }
      worst_dlpf = std::max(worst_dlpf, max_abs(sub(s.theta, staggered)));
    }
  }

  const bool ok = worst_hb < 1e-10 && worst_dlpf < 1e-10;
  return {4, "Physics closure: HB/DLPF reproduce the mapped integrator trajectories", ok,
          fmt("max deviation HB %.3e, DLPF %.3e (< 1e-10)", worst_hb, worst_dlpf), 0.0};
}

// --- 5. Second-moment bound --------------------------------------------------

CriterionResult second_moment_bound() {
  // Exhaustive two-sample oracle: per-sample gradients {0, 2}, B = 1.
  // E[g^2] = (0 + 4)/2 = 2 = sigma^2/B + (grad J)^2 with sigma^2 = 1, grad J = 1.
  const double exhaustive = (0.0 * 0.0 + 2.0 * 2.0) / 2.0;
  const double tight_bound = 1.0 / 1.0 + 1.0 * 1.0;
  const bool exhaustive_ok = std::fabs(exhaustive - tight_bound) < 1e-15;

  // Monte-Carlo bound on the noisy quadratic.
  const Objective quad = make_quadratic(2, 4.0);
  const StochasticObjective sobj =
      make_noisy(quad, Vec{1.0, 2.0}, BatchSchedule::constant(4));
  Rng rng(7);
  const Vec theta{0.5, -0.25};
  const SecondMomentReport rep = verify_second_moment_bound(sobj, theta, 0, 100000, rng);

  const bool ok = exhaustive_ok && rep.holds_within_3se;
  std::string detail = fmt("two-sample oracle E[g^2]=%.1f (tight); MC estimates", exhaustive);
  for (std::size_t i = 0; i < rep.moment_estimate.size(); ++i) {
    detail += fmt(" %.4f<=%.4f", rep.moment_estimate[i], rep.bound[i]);
  }
  return {5, "Second-moment bound: exhaustive oracle + Monte-Carlo (3 SE)", ok, detail, 0.0};
}

// --- 6. Sublinear convergence ------------------------------------------------

CriterionResult sublinear_convergence() {
  const std::size_t dim = 10;
  const std::int64_t steps = 100000;
  const Objective obj = make_quadratic(dim, 10.0);
  const StochasticObjective sobj =
      make_noisy(obj, Vec(dim, 1.0), BatchSchedule::linear(1));

  OptimizerConfig rad;
  rad.algo = Algo::RAD1;
  rad.alpha = 0.05;
  rad.beta1 = 0.9;
  rad.beta2 = 0.999;
  rad.delta = 1.0;
  rad.zeta_schedule = ZetaSchedule::annealed(12.0 * kPi, steps);

  Rng rng(11);
  OptState state = OptState::init(rng.gaussian_vec(dim, 0.0, 1.0));
  std::vector<double> gns;
  gns.reserve(steps);
  for (std::int64_t k = 0; k < steps; ++k) {
    const Vec g = minibatch_grad(sobj, state.theta, k, rng);
    state = step(rad, state, g);
    const Vec true_grad = obj.grad(state.theta);
    gns.push_back(dot(true_grad, true_grad));
  }
  const double slope = convergence_slope(gns, gns.size() / 2);
  const bool ok = slope <= -0.8;
  return {6, "Sublinear convergence: RAD1 running-mean ||grad||^2 slope <= -0.8", ok,
          fmt("log-log slope %.3f", slope), 0.0};
}

// --- 7. Convergence condition checker ---------------------------------------------

CriterionResult convergence_conditions() {
  OptimizerConfig cfg;
  cfg.delta = 1.0;

  // Boundary pass: alpha exactly at sqrt(zeta0)/(2L).
  cfg.alpha = 0.05;
  cfg.beta2 = 0.9999;
  const ConvergenceReport boundary = check_convergence_conditions(cfg, 1.0, 1.0, 0.01);

  // beta2 fail: requires beta2 >= 1 - 0.01/16 = 0.999375.
  cfg.alpha = 1e-4;
  cfg.beta2 = 0.999;
  const ConvergenceReport fail = check_convergence_conditions(cfg, 1.0, 1.0, 0.01);

  // Tiny L: alpha condition always passes.
  cfg.alpha = 1.0;
  cfg.beta2 = 0.9999999;
  const ConvergenceReport loose = check_convergence_conditions(cfg, 1e-9, 1.0, 1.0);

  const bool ok = boundary.alpha_ok && !fail.beta2_ok && fail.alpha_ok && loose.alpha_ok &&
                  std::fabs(fail.beta2_bound - 0.999375) < 1e-12;
  return {7, "Convergence condition checker reproduces boundary pass/fail cases", ok,
          fmt("alpha bound %.4f, failing beta2 bound %.6f", boundary.alpha_bound,
              fail.beta2_bound),
          0.0};
}

// --- 8. Gradient correctness ---------------------------------------------------

CriterionResult gradient_correctness() {
  Rng rng(3);
  double worst = 0.0;
  const std::vector<std::vector<std::size_t>> shapes = {
      {8, 4, 2}, {4, 64, 64, 2}, {3, 5, 5, 1}, {2, 7, 3}};
  for (const auto& shape : shapes) {
    const Mlp net(shape);
    Vec params = net.init_params(rng);
    std::vector<Vec> inputs, targets;
    for (int s = 0; s < 4; ++s) {
      inputs.push_back(rng.gaussian_vec(shape.front(), 0.0, 1.0));
      targets.push_back(rng.gaussian_vec(shape.back(), 0.0, 1.0));
    }
    for (const LossKind kind : {LossKind::Mse, LossKind::Huber}) {
      const LossSpec loss{kind, 1.0};
      const auto [value, grad] = net.backward(params, inputs, targets, loss);
      (void)value;
      // Spot-check 20 coordinates with central differences.
      const double eps = 1e-5;
      for (int t = 0; t < 20; ++t) {
        const std::size_t i = rng.uniform_int(net.param_count());
        const double orig = params[i];
        params[i] = orig + eps;
        const double fp = net.backward(params, inputs, targets, loss).first;
        params[i] = orig - eps;
        const double fm = net.backward(params, inputs, targets, loss).first;
        params[i] = orig;
        const double fd = (fp - fm) / (2.0 * eps);
        const double denom = std::max({std::fabs(grad[i]), std::fabs(fd), 1e-8});
        worst = std::max(worst, std::fabs(fd - grad[i]) / denom);
      }
    }
  }
  const bool ok = worst < 1e-5;
  return {8, "Gradient correctness: backprop vs central differences", ok,
          fmt("max relative error %.3e (< 1e-5)", worst), 0.0};
}

// --- 9. Desk-scale RL stability -------------------------------------------------

CriterionResult rl_stability(int parallel) {
  const std::int64_t budget = 50000;
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  DqnConfig base;
  base.optimizer.alpha = 5e-4;
  base.optimizer.beta1 = 0.9;
  base.optimizer.beta2 = 0.999;
  base.optimizer.delta = 1.0;
  base.update_period = 1;
  base.epsilon_floor = 0.01;

  DqnConfig rad = base;
  rad.optimizer.algo = Algo::RAD1;
  rad.optimizer.zeta_schedule =
      ZetaSchedule::annealed(12.0 * kPi, (budget - base.warmup_steps) / base.update_period);

  DqnConfig adam = base;
  adam.optimizer.algo = Algo::ADAM;
  adam.optimizer.eps = 1e-16;

  struct Run {
    DqnConfig cfg;
    std::uint64_t seed;
    DqnResult result;
  };
  std::vector<Run> runs;
  for (std::uint64_t s : seeds) runs.push_back({rad, s, {}});
  for (std::uint64_t s : seeds) runs.push_back({adam, s, {}});

  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, parallel);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= runs.size()) return;
        runs[idx].result = train_dqn(runs[idx].cfg, budget, runs[idx].seed);
      }
    });
  }
  for (auto& t : pool) t.join();

  int rad_solved = 0, rad_div = 0;
  std::vector<double> rad_stab, adam_stab;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const DqnResult& r = runs[i].result;
    if (r.best_mean_return >= 195.0) ++rad_solved;
    if (r.diverged) ++rad_div;
    rad_stab.push_back(stability_metric(r.hamiltonian_trace, r.zeta_switch_step));
    const DqnResult& a = runs[seeds.size() + i].result;
    adam_stab.push_back(stability_metric(a.hamiltonian_trace, a.zeta_switch_step));
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  const double med_rad = median(rad_stab);
  const double med_adam = median(adam_stab);

  const bool ok = rad_solved >= 3 && rad_div == 0 && med_rad >= med_adam;
  return {9, "RL stability: RAD1 solves CartPole, zero DIV, stability >= ADAM", ok,
          fmt("RAD solved %d/5 (>=195), DIV %d, median stability RAD %.4f vs ADAM %.4f",
              rad_solved, rad_div, med_rad, med_adam),
          0.0};
}

// --- 10. Determinism -------------------------------------------------------------

CriterionResult determinism(const std::string& work_dir) {
  const std::string text =
      "[experiment]\n"
      "kind = stochastic-objective\n"
      "name = determinism_check\n"
      "seeds = 1,2\n"
      "budget = 2000\n"
      "log_every = 10\n"
      "[objective]\n"
      "type = quadratic\n"
      "dim = 4\n"
      "condition = 10\n"
      "noise_std = 1.0\n"
      "batch = 2\n"
      "[optimizer rad]\n"
      "algo = RAD1\n"
      "alpha = 0.01\n"
      "zeta = annealed\n"
      "[optimizer adam]\n"
      "algo = ADAM\n"
      "alpha = 0.01\n";

  auto run_into = [&](const std::string& dir) {
    ExperimentConfig ec = ExperimentConfig::from_config(parse_config(text));
    ec.out_dir = dir;
    run_experiment(ec, 2);
  };
  const fs::path base = fs::path(work_dir) / "determinism";
  const fs::path dir_a = base / "a";
  const fs::path dir_b = base / "b";
  fs::remove_all(base);
  run_into(dir_a.string());
  run_into(dir_b.string());

  bool identical = true;
  std::string mismatch;
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir_a)) {
    ++files;
    std::ifstream fa(entry.path(), std::ios::binary);
    std::ifstream fb(dir_b / entry.path().filename(), std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (!fb || sa.str() != sb.str()) {
      identical = false;
      mismatch = entry.path().filename().string();
    }
  }
  const bool ok = identical && files > 0;
  return {10, "Determinism: rerunning a config yields byte-identical CSVs", ok,
          ok ? fmt("%zu files byte-identical across reruns", files)
             : "mismatch in " + mismatch,
          0.0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  struct Entry {
    int id;
    double budget_seconds;
    std::function<CriterionResult()> run;
  };
  const std::vector<Entry> entries = {
      {1, 1.0, adam_degeneracy},
      {2, 1.0, speed_bounds},
      {3, 5.0, conformal_symplecticity},
      {4, 1.0, physics_closure},
      {5, 10.0, second_moment_bound},
      {6, 60.0, sublinear_convergence},
      {7, 1.0, convergence_conditions},
      {8, 5.0, gradient_correctness},
      {9, 900.0, [&]() { return rl_stability(options.parallel); }},
      {10, 120.0, [&]() { return determinism(options.work_dir); }},
  };

  std::vector<CriterionResult> results;
  for (const auto& entry : entries) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), entry.id) ==
            options.only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res = entry.run();
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.seconds > entry.budget_seconds) {
      res.passed = false;
      res.detail += fmt(" [over runtime budget: %.1fs > %.0fs]", res.seconds,
                        entry.budget_seconds);
    }
    results.push_back(std::move(res));
  }
  return results;
}

bool report_acceptance(const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d: %s — %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    all &= r.passed;
  }
  std::fflush(stdout);
  return all;
}

}  // namespace radopt
