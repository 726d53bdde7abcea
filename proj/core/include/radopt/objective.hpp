#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "radopt/rng.hpp"
#include "radopt/vec.hpp"

namespace radopt {

/// Differentiable objective with known structural constants where available.
struct Objective {
  std::size_t dim = 0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  double smoothness = 0.0;       // L, 0 if unknown
  double coord_grad_bound = 0.0; // M, 0 if unknown
  Vec optimum;                   // theta*, empty if unknown
};

/// J(theta) = 1/2 theta^T D theta with D diagonal, eigenvalues log-spaced in
/// [1, condition_number]. L = condition_number, optimum at the origin.
Objective make_quadratic(std::size_t n, double condition_number);

/// J(theta) = sum_{i<n} [100 (theta_{i+1} - theta_i^2)^2 + (1 - theta_i)^2],
/// optimum at the all-ones vector. Requires n >= 2.
Objective make_rosenbrock(std::size_t n);

/// Mini-batch size schedule: constant B or linear B_k = B * (k+1).
struct BatchSchedule {
  enum class Kind { Constant, Linear };
  Kind kind = Kind::Constant;
  std::int64_t base = 1;

  static BatchSchedule constant(std::int64_t b);
  static BatchSchedule linear(std::int64_t b);
  std::int64_t size_at(std::int64_t k) const;
};

/// Stochastic gradient oracle over a base objective. Two noise models:
///  - additive: each per-sample gradient is grad(theta) + N(0, diag(sigma^2));
///    the mini-batch mean is drawn directly as grad + N(0, diag(sigma^2)/B_k),
///    which is the exact distribution of the average of B_k samples.
///  - dataset: finite set of per-sample gradient oracles, sampled uniformly
///    with replacement; J is their mean.
struct StochasticObjective {
  Objective base;
  Vec sigma;  // additive mode; empty in dataset mode
  std::vector<std::function<Vec(const Vec&)>> dataset;  // per-sample gradients
  BatchSchedule batch_schedule;
};

StochasticObjective make_noisy(Objective base, Vec sigma, BatchSchedule schedule);
StochasticObjective make_dataset(Objective base,
                                 std::vector<std::function<Vec(const Vec&)>> samples,
                                 BatchSchedule schedule);

/// Unbiased mini-batch gradient estimate at theta for step k.
Vec minibatch_grad(const StochasticObjective& sobj, const Vec& theta, std::int64_t k,
                   Rng& rng);

/// Monte-Carlo check of the per-coordinate second-moment bound
/// E[g_i^2 | theta] <= sigma_i^2 / B_k + [grad J(theta)]_i^2.
struct SecondMomentReport {
  std::vector<double> moment_estimate;  // E[g_i^2] per coordinate
  std::vector<double> bound;            // sigma_i^2/B_k + grad_i^2
  std::vector<double> standard_error;   // SE of the estimate per coordinate
  bool holds_within_3se = true;
};

SecondMomentReport verify_second_moment_bound(const StochasticObjective& sobj, const Vec& theta,
                           std::int64_t k, std::int64_t trials, Rng& rng);

/// Least-squares slope of log(running mean of trace) vs log(step count) over
/// the final `window` entries. Trace entries are per-step ||grad J||^2.
double convergence_slope(const std::vector<double>& trace, std::size_t window);

/// Central finite-difference gradient check: max relative error over
/// `points` random points (components drawn from N(0,1)).
double gradcheck_max_rel_error(const Objective& obj, std::size_t points, Rng& rng,
                               double perturbation = 1e-5);

}  // namespace radopt
