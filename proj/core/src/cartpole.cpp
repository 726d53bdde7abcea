#include "radopt/cartpole.hpp"

#include <cmath>
#include <stdexcept>

namespace radopt {

const std::array<double, 4>& CartPoleEnv::reset(Rng& rng) {
  for (double& s : state_) s = -0.05 + 0.1 * rng.uniform();
  done_ = false;
  steps_ = 0;
  return state_;
}

CartPoleEnv::StepResult CartPoleEnv::step(int action) {
  if (done_) throw std::logic_error("step on a terminated episode");
  if (action != 0 && action != 1) throw std::invalid_argument("action must be 0 or 1");

  double x = state_[0], x_dot = state_[1], phi = state_[2], phi_dot = state_[3];
  const double force = action == 1 ? kForce : -kForce;
  const double total_mass = kCartMass + kPoleMass;
  const double pole_mass_length = kPoleMass * kPoleHalfLength;

  const double cos_phi = std::cos(phi);
  const double sin_phi = std::sin(phi);
  const double temp = (force + pole_mass_length * phi_dot * phi_dot * sin_phi) / total_mass;
  const double phi_acc = (kGravity * sin_phi - cos_phi * temp) /
                         (kPoleHalfLength *
                          (4.0 / 3.0 - kPoleMass * cos_phi * cos_phi / total_mass));
  const double x_acc = temp - pole_mass_length * phi_acc * cos_phi / total_mass;

  // Semi-implicit Euler: velocities first, positions with the new velocities.
  x_dot += kTau * x_acc;
  x += kTau * x_dot;
  phi_dot += kTau * phi_acc;
  phi += kTau * phi_dot;

  state_ = {x, x_dot, phi, phi_dot};
  ++steps_;

  const bool out_of_bounds = std::fabs(x) > kXLimit || std::fabs(phi) > kAngleLimit;
  const bool truncated = !out_of_bounds && steps_ >= kMaxEpisodeSteps;
  done_ = out_of_bounds || truncated;
  return StepResult{state_, 1.0, done_, truncated};
}

}  // namespace radopt
