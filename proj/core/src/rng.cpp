#include "radopt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radopt {

double Rng::uniform() {
  // 53 random bits -> double in [0, 1).
  return (engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::gaussian(double mean, double std) {
  if (std < 0.0) throw std::invalid_argument("gaussian: std must be nonnegative");
  if (std == 0.0) return mean;
  // Box-Muller; u1 in (0, 1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + std * z;
}

Vec Rng::gaussian_vec(std::size_t n, double mean, double std) {
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = gaussian(mean, std);
  return out;
}

}  // namespace radopt
