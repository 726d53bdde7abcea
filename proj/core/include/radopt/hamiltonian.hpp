#pragma once

#include <functional>

#include "radopt/vec.hpp"

namespace radopt {

enum class KineticKind { Classical, Relativistic };

/// Kinetic energy of a separable Hamiltonian.
///
/// Classical:    T(p) = sum_i p_i^2 / (2m)
/// Relativistic: T(p) = sum_i c * sqrt(p_i^2 + m^2 c^2)  (equal-mass
///               one-dimensional particles; the rest-energy term is kept)
struct KineticEnergy {
  KineticKind kind = KineticKind::Classical;
  double m = 1.0;
  double c = 1.0;  // relativistic only

  double value(const Vec& p) const;
  Vec grad(const Vec& p) const;
};

/// Conformal Hamiltonian system H(q,p) = T(p) + U(q) with momentum damping:
///   dp/dt = -grad U(q) - r p,   dq/dt = grad_p T(p).
/// Only separable Hamiltonians are supported, which makes the first-order
/// integrator's p-update explicit.
struct HamiltonianSystem {
  std::function<double(const Vec&)> potential;
  std::function<Vec(const Vec&)> potential_grad;
  KineticEnergy kinetic;
  double r = 0.0;  // damping constant, >= 0
};

struct PhasePoint {
  Vec q;
  Vec p;
};

/// Total energy T(p) + U(q). Throws on a non-finite result.
double hamiltonian_value(const HamiltonianSystem& sys, const PhasePoint& z);

/// One step of the first-order conformal symplectic integrator
/// (symplectic-Euler core composed with exact momentum damping):
///   p+ = e^{-rh} p - h grad U(q),   q+ = q + h grad_p T(p+).
PhasePoint step_first_order(const HamiltonianSystem& sys, const PhasePoint& z, double h);

/// One step of the second-order integrator: half-step damping, leapfrog
/// (q-half, p-full, q-half), half-step damping.
PhasePoint step_second_order(const HamiltonianSystem& sys, const PhasePoint& z, double h);

enum class IntegratorOrder { First, Second };

/// Determinant of the Jacobian of one integrator step at z, computed by
/// central finite differences with perturbation 1e-6. One-dimensional
/// systems only. A conformal symplectic step gives exactly e^{-rh}.
double phase_area_contraction(const HamiltonianSystem& sys, const PhasePoint& z, double h,
                              IntegratorOrder order = IntegratorOrder::First);

}  // namespace radopt
