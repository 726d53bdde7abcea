#pragma once

#include <cstdint>
#include <random>

#include "radopt/vec.hpp"

namespace radopt {

/// Deterministic random source. Backed by std::mt19937_64, whose output
/// stream is fully specified by the C++ standard, so identical seeds give
/// identical streams on every platform. Gaussian sampling uses an explicit
/// Box-Muller transform (std::normal_distribution is not portable).
///
/// Single-owner: not safe to share across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_int(std::uint64_t n);

  /// One sample from N(mean, std^2). Requires std >= 0.
  double gaussian(double mean = 0.0, double std = 1.0);

  /// n independent samples from N(mean, std^2).
  Vec gaussian_vec(std::size_t n, double mean = 0.0, double std = 1.0);

 private:
  std::mt19937_64 engine_;
};

}  // namespace radopt
