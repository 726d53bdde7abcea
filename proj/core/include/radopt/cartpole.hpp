#pragma once

#include <array>

#include "radopt/rng.hpp"

namespace radopt {

/// Classic cart-pole balancing environment (standard public benchmark
/// dynamics). State is (x, x_dot, phi, phi_dot); actions push the cart left
/// or right with fixed force. Semi-implicit Euler integration with a 0.02 s
/// step; reward +1 per surviving step; episodes end when |x| > 2.4,
/// |phi| > 12 degrees, or after 500 steps.
class CartPoleEnv {
 public:
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kPoleHalfLength = 0.5;
  static constexpr double kForce = 10.0;
  static constexpr double kTau = 0.02;
  static constexpr double kXLimit = 2.4;
  static constexpr double kAngleLimit = 12.0 * 3.14159265358979323846 / 180.0;
  static constexpr int kMaxEpisodeSteps = 500;

  struct StepResult {
    std::array<double, 4> state;
    double reward;
    bool done;       // termination by bounds or episode length
    bool truncated;  // done specifically because of the length cap
  };

  /// Uniform state in [-0.05, 0.05]^4, like the public benchmark's reset.
  const std::array<double, 4>& reset(Rng& rng);

  /// Applies action 0 (push left) or 1 (push right). Throws if the episode
  /// has already terminated.
  StepResult step(int action);

  const std::array<double, 4>& state() const { return state_; }
  bool done() const { return done_; }
  int steps_taken() const { return steps_; }

 private:
  std::array<double, 4> state_{};
  bool done_ = true;
  int steps_ = 0;
};

}  // namespace radopt
