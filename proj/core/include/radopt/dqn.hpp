#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radopt/mlp.hpp"
#include "radopt/optimizer.hpp"
#include "radopt/trace.hpp"

namespace radopt {

/// DQN-lite: epsilon-greedy exploration, uniform replay, hard target-network
/// sync, no double-Q or dueling.
struct DqnConfig {
  double gamma = 0.99;
  double epsilon_start = 1.0;
  double epsilon_floor = 0.05;
  // Linear epsilon decay over this fraction of the env-step budget.
  double epsilon_decay_fraction = 0.1;
  std::int64_t target_sync_period = 200;  // in updates
  std::int64_t update_period = 2;         // env steps between gradient updates
  std::int64_t batch_size = 64;
  std::int64_t replay_capacity = 20000;
  std::int64_t warmup_steps = 500;  // env steps before updates begin
  std::vector<std::size_t> hidden_layers = {64, 64};
  LossSpec loss{LossKind::Huber, 1.0};
  OptimizerConfig optimizer;
};

struct DqnResult {
  /// Per-episode rows: return, mean TD loss, mean ||grad||^2, H, delta_h.
  Trace episode_trace = Trace(
      {"return", "loss", "grad_norm_sq", "hamiltonian", "delta_h"});
  /// Per-update Hamiltonian samples (for the stability metric).
  std::vector<double> hamiltonian_trace;
  bool diverged = false;     // DIV: non-finite loss or |Q| blow-up
  std::int64_t env_steps = 0;
  std::int64_t updates = 0;
  double final_mean_return = 0.0;   // mean over the last 100 episodes
  double best_mean_return = 0.0;    // best 100-episode running mean seen
  std::int64_t zeta_switch_step = 0;
};

/// Trains a Q-network on CartPole for `budget` environment steps. All
/// stochasticity flows through `seed`, so a (seed, config) pair is fully
/// reproducible. Divergence terminates the run and tags it DIV instead of
/// throwing.
DqnResult train_dqn(const DqnConfig& cfg, std::int64_t budget, std::uint64_t seed);

/// Fraction of update steps with H_{k+1} <= H_k + 1e-9, evaluated after the
/// zeta switch step.
double stability_metric(const std::vector<double>& hamiltonian_trace,
                        std::int64_t switch_step);

}  // namespace radopt
