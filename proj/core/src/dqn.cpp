#include "radopt/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "radopt/cartpole.hpp"
#include "radopt/replay.hpp"

namespace radopt {

namespace {

constexpr double kDivergenceQLimit = 1e6;

struct EpisodeStats {
  double ret = 0.0;
  double loss_sum = 0.0;
  double grad_norm_sq_sum = 0.0;
  double last_h = std::nan("");
  std::int64_t update_count = 0;
};

bool momentum_semantics(Algo algo) {
  return algo != Algo::SGD;
}

}  // namespace

DqnResult train_dqn(const DqnConfig& cfg, std::int64_t budget, std::uint64_t seed) {
  std::vector<std::size_t> shape;
  shape.push_back(4);
  for (std::size_t h : cfg.hidden_layers) shape.push_back(h);
  shape.push_back(2);
  const Mlp net(shape);

  Rng rng(seed);
  Vec params = net.init_params(rng);
  Vec target_params = params;
  OptState opt = OptState::init(params);
  ReplayBuffer buffer(static_cast<std::size_t>(cfg.replay_capacity));
  CartPoleEnv env;

  DqnResult result;
  result.episode_trace =
      Trace({"return", "loss", "grad_norm_sq", "hamiltonian", "delta_h"});
  if (cfg.optimizer.algo == Algo::RAD1) {
    result.zeta_switch_step = cfg.optimizer.zeta_schedule.switch_step(cfg.optimizer.beta2);
  }

  const double decay_steps = std::max(1.0, cfg.epsilon_decay_fraction * budget);
  const bool log_hamiltonian =
      momentum_semantics(cfg.optimizer.algo) && cfg.optimizer.beta1 > 0.0;

  std::vector<EpisodeStats> episodes;
  std::deque<double> last_returns;
  EpisodeStats current;
  std::array<double, 4> state = env.reset(rng);

  std::vector<Vec> batch_inputs(cfg.batch_size);
  std::vector<std::pair<int, double>> batch_targets(cfg.batch_size);

  auto finish_episode = [&]() {
    episodes.push_back(current);
    last_returns.push_back(current.ret);
    if (last_returns.size() > 100) last_returns.pop_front();
    double mean = 0.0;
    for (double r : last_returns) mean += r;
    mean /= static_cast<double>(last_returns.size());
    result.final_mean_return = mean;
    result.best_mean_return = std::max(result.best_mean_return, mean);
    current = EpisodeStats{};
    state = env.reset(rng);
  };

  for (std::int64_t t = 0; t < budget && !result.diverged; ++t) {
    // Epsilon-greedy action.
    const double frac = std::min(1.0, static_cast<double>(t) / decay_steps);
    const double epsilon =
        cfg.epsilon_start + frac * (cfg.epsilon_floor - cfg.epsilon_start);
    int action;
    if (rng.uniform() < epsilon) {
      action = static_cast<int>(rng.uniform_int(2));
    } else {
      const Vec q = net.forward(opt.theta, Vec(state.begin(), state.end()));
      action = q[1] > q[0] ? 1 : 0;
    }

    const auto res = env.step(action);
    buffer.push(Transition{state, action, res.reward, res.state,
                           res.done && !res.truncated});
    state = res.state;
    current.ret += res.reward;
    ++result.env_steps;

    // One gradient update every update_period env steps after warmup.
    if (t >= cfg.warmup_steps && t % cfg.update_period == 0 &&
        buffer.size() >= static_cast<std::size_t>(cfg.batch_size)) {
      for (std::int64_t b = 0; b < cfg.batch_size; ++b) {
        const Transition& tr = buffer.sample(rng);
        double td_target = tr.reward;
        if (!tr.done) {
          const Vec qn =
              net.forward(target_params, Vec(tr.next_state.begin(), tr.next_state.end()));
          td_target += cfg.gamma * std::max(qn[0], qn[1]);
        }
        // Only the taken action carries a residual.
        batch_inputs[b] = Vec(tr.state.begin(), tr.state.end());
        batch_targets[b] = {tr.action, td_target};
      }

      double max_q = 0.0;
      const auto [loss, grad] =
          net.backward(opt.theta, batch_inputs, batch_targets, cfg.loss, &max_q);
      if (!std::isfinite(loss) || !all_finite(grad) || max_q > kDivergenceQLimit) {
        result.diverged = true;
        break;
      }
      opt = step(cfg.optimizer, opt, grad);
      ++result.updates;

      current.loss_sum += loss;
      current.grad_norm_sq_sum += dot(grad, grad);
      ++current.update_count;
      if (log_hamiltonian) {
        const double h = network_hamiltonian(opt, cfg.optimizer, loss);
        result.hamiltonian_trace.push_back(h);
        current.last_h = h;
      }
      if (result.updates % cfg.target_sync_period == 0) {
        target_params = opt.theta;
      }
    }

    if (res.done) finish_episode();
  }

  // Delta-H relative to the minimum over all logged episodes.
  double min_h = std::numeric_limits<double>::infinity();
  for (const auto& ep : episodes) {
    if (std::isfinite(ep.last_h)) min_h = std::min(min_h, ep.last_h);
  }
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    const auto& ep = episodes[i];
    const double mean_loss =
        ep.update_count > 0 ? ep.loss_sum / static_cast<double>(ep.update_count) : 0.0;
    const double mean_gns = ep.update_count > 0
                                ? ep.grad_norm_sq_sum / static_cast<double>(ep.update_count)
                                : 0.0;
    const double dh = std::isfinite(ep.last_h) ? ep.last_h - min_h : std::nan("");
    result.episode_trace.append(static_cast<std::int64_t>(i),
                                {ep.ret, mean_loss, mean_gns, ep.last_h, dh});
  }
  return result;
}

double stability_metric(const std::vector<double>& hamiltonian_trace,
                        std::int64_t switch_step) {
  const std::size_t start =
      std::min(hamiltonian_trace.size(),
               static_cast<std::size_t>(std::max<std::int64_t>(0, switch_step)));
  std::size_t total = 0;
  std::size_t descending = 0;
  for (std::size_t i = start; i + 1 < hamiltonian_trace.size(); ++i) {
    ++total;
    if (hamiltonian_trace[i + 1] <= hamiltonian_trace[i] + 1e-9) ++descending;
  }
  if (total == 0) return 1.0;
  return static_cast<double>(descending) / static_cast<double>(total);
}

}  // namespace radopt
