#pragma once

#include <cstdint>
#include <string>

#include "radopt/vec.hpp"

namespace radopt {

enum class Algo {
  SGD,
  HB,
  NAG,
  DLPF,
  RGD,
  RAD1_ORIGINAL,
  RAD1,
  RAD2,
  ADAM,
  ADAM_ORIGINAL,
};

Algo algo_from_name(const std::string& name);
std::string algo_name(Algo algo);

/// Schedule of the symplectic factor zeta used by RAD1.
///
/// constant: zeta_k = eps
/// annealed: zeta_k = min{ e^{kappa (k/N - 1)}, 1 - beta2^{k+1} }
struct ZetaSchedule {
  enum class Kind { Constant, Annealed };
  Kind kind = Kind::Constant;
  double eps = 1e-16;    // constant value
  double kappa = 0.0;    // annealed rate, > 0
  std::int64_t horizon = 0;  // annealed N, > 0

  static ZetaSchedule constant(double eps);
  static ZetaSchedule annealed(double kappa, std::int64_t horizon);

  double value(std::int64_t k, double beta2) const;

  /// First step at which the annealed schedule has reached 1 - beta2^{k+1}
  /// (0 for the constant schedule).
  std::int64_t switch_step(double beta2) const;
};

struct OptimizerConfig {
  Algo algo = Algo::SGD;
  double alpha = 1e-3;   // learning rate
  double beta1 = 0.9;    // first-order momentum coefficient
  double beta2 = 0.999;  // second-order momentum coefficient
  double delta = 1.0;    // speed coefficient
  double eps = 1e-16;    // rational factor (ADAM variants)
  ZetaSchedule zeta_schedule;  // RAD1 only

  void validate() const;
};

/// Parameters plus optimizer momenta. v and y start at zero; k is the
/// 0-based index of the next step, matching the algorithms' loop variable.
struct OptState {
  Vec theta;
  Vec v;
  Vec y;
  std::int64_t k = 0;

  static OptState init(Vec theta0);
};

/// Applies exactly one algorithm's update to state with gradient grad and
/// increments k. Pure: returns a new state.
OptState step(const OptimizerConfig& cfg, const OptState& state, const Vec& grad);

/// Physical constants of the underlying conformal Hamiltonian system.
struct PhysicalParams {
  double h;  // integrator step
  double r;  // damping
  double m;  // particle mass
  double c;  // light speed
};

struct HyperParams {
  double alpha;
  double beta1;
  double delta;
};

/// Change of variables from physics to hyperparameters:
///   beta1 = e^{-rh},  alpha = h^2 / (m (1 - e^{-rh})),
///   delta = h / (c m (1 - e^{-rh})).
HyperParams physics_to_hyper(const PhysicalParams& phys);

/// Inverse map with the h = 1 convention:
///   r = -ln beta1,  m = 1 / (alpha (1 - beta1)),  c = alpha / delta.
PhysicalParams hyper_to_physics(double alpha, double beta1, double delta);

/// Recovers conjugate momenta from optimizer momenta under h = 1:
/// p = -v / (1 - beta1).
Vec momenta_from_v(const Vec& v, double beta1);

/// Convergence precondition check:
///   alpha <= sqrt(zeta0) / (2L)  and  beta2 >= 1 - zeta0 / (16 M^2 delta^2).
struct ConvergenceReport {
  bool alpha_ok;
  double alpha_bound;   // sqrt(zeta0) / (2L)
  double alpha_margin;  // alpha_bound - alpha
  bool beta2_ok;
  double beta2_bound;   // 1 - zeta0 / (16 M^2 delta^2)
  double beta2_margin;  // beta2 - beta2_bound
  bool pass() const { return alpha_ok && beta2_ok; }
};

ConvergenceReport check_convergence_conditions(const OptimizerConfig& cfg, double L, double M,
                                       double zeta0);

}  // namespace radopt
