#include "radopt/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radopt {

Mlp::Mlp(std::vector<std::size_t> layer_sizes) : layers_(std::move(layer_sizes)) {
  if (layers_.size() < 2) throw std::invalid_argument("MLP needs at least two layers");
  for (std::size_t s : layers_) {
    if (s == 0) throw std::invalid_argument("layer sizes must be positive");
  }
  offsets_.resize(layers_.size() - 1);
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    offsets_[l] = param_count_;
    param_count_ += layers_[l] * layers_[l + 1] + layers_[l + 1];
  }
}

Vec Mlp::init_params(Rng& rng) const {
  Vec params = zeros(param_count_);
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    const std::size_t fan_in = layers_[l];
    const std::size_t fan_out = layers_[l + 1];
    const double std = std::sqrt(2.0 / static_cast<double>(fan_in));
    double* w = params.data() + offsets_[l];
    for (std::size_t i = 0; i < fan_in * fan_out; ++i) w[i] = rng.gaussian(0.0, std);
    // biases stay zero
  }
  return params;
}

Vec Mlp::forward(const Vec& params, const Vec& input) const {
  if (params.size() != param_count_) throw std::invalid_argument("parameter count mismatch");
  if (input.size() != layers_.front()) throw std::invalid_argument("input size mismatch");
  Vec act = input;
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    const std::size_t fan_in = layers_[l];
    const std::size_t fan_out = layers_[l + 1];
    const double* w = params.data() + offsets_[l];
    const double* b = w + fan_in * fan_out;
    Vec next(fan_out);
    for (std::size_t j = 0; j < fan_out; ++j) {
      double s = b[j];
      const double* wj = w + j * fan_in;
      for (std::size_t i = 0; i < fan_in; ++i) s += wj[i] * act[i];
      next[j] = s;
    }
    const bool hidden = l + 2 < layers_.size();
    if (hidden) {
      for (double& x : next) x = x > 0.0 ? x : 0.0;
    }
    act = std::move(next);
  }
  return act;
}

namespace {

// Loss and its derivative for one residual r = pred - target.
inline double residual_loss(double r, const LossSpec& loss, double* dloss) {
  if (loss.kind == LossKind::Mse) {
    *dloss = r;
    return 0.5 * r * r;
  }
  const double d = loss.huber_delta;
  if (std::fabs(r) <= d) {
    *dloss = r;
    return 0.5 * r * r;
  }
  *dloss = r > 0.0 ? d : -d;
  return d * (std::fabs(r) - 0.5 * d);
}

}  // namespace

// delta_fn(sample index, prediction, delta out) -> per-sample loss
template <typename DeltaFn>
std::pair<double, Vec> Mlp::backward_impl(const Vec& params,
                                          const std::vector<Vec>& inputs,
                                          DeltaFn&& delta_fn) const {
  if (params.size() != param_count_) throw std::invalid_argument("parameter count mismatch");
  if (inputs.empty()) throw std::invalid_argument("empty batch");
  const std::size_t depth = layers_.size() - 1;
  const double inv_batch = 1.0 / static_cast<double>(inputs.size());

  Vec grad = zeros(param_count_);
  double total_loss = 0.0;

  // Per-sample activations (post-nonlinearity), index 0 is the input.
  std::vector<Vec> acts(layers_.size());

  for (std::size_t s = 0; s < inputs.size(); ++s) {
    if (inputs[s].size() != layers_.front()) {
      throw std::invalid_argument("sample shape mismatch");
    }
    acts[0] = inputs[s];
    for (std::size_t l = 0; l < depth; ++l) {
      const std::size_t fan_in = layers_[l];
      const std::size_t fan_out = layers_[l + 1];
      const double* w = params.data() + offsets_[l];
      const double* b = w + fan_in * fan_out;
      acts[l + 1].assign(fan_out, 0.0);
      for (std::size_t j = 0; j < fan_out; ++j) {
        double z = b[j];
        const double* wj = w + j * fan_in;
        for (std::size_t i = 0; i < fan_in; ++i) z += wj[i] * acts[l][i];
        acts[l + 1][j] = (l + 1 < depth && z < 0.0) ? 0.0 : z;
      }
    }

    Vec delta(layers_.back());
    total_loss += delta_fn(s, acts[depth], delta);

    // Backpropagate.
    for (std::size_t l = depth; l-- > 0;) {
      const std::size_t fan_in = layers_[l];
      const std::size_t fan_out = layers_[l + 1];
      const double* w = params.data() + offsets_[l];
      double* gw = grad.data() + offsets_[l];
      double* gb = gw + fan_in * fan_out;
      for (std::size_t j = 0; j < fan_out; ++j) {
        const double dj = delta[j];
        double* gwj = gw + j * fan_in;
        for (std::size_t i = 0; i < fan_in; ++i) gwj[i] += dj * acts[l][i];
        gb[j] += dj;
      }
      if (l > 0) {
        Vec prev(fan_in, 0.0);
        for (std::size_t j = 0; j < fan_out; ++j) {
          const double dj = delta[j];
          const double* wj = w + j * fan_in;
          for (std::size_t i = 0; i < fan_in; ++i) prev[i] += wj[i] * dj;
        }
        // ReLU mask of the hidden layer we are stepping into.
        for (std::size_t i = 0; i < fan_in; ++i) {
          if (acts[l][i] <= 0.0) prev[i] = 0.0;
        }
        delta = std::move(prev);
      }
    }
  }

  for (double& g : grad) g *= inv_batch;
  return {total_loss * inv_batch, std::move(grad)};
}

std::pair<double, Vec> Mlp::backward(const Vec& params,
                                     const std::vector<Vec>& inputs,
                                     const std::vector<Vec>& targets,
                                     const LossSpec& loss) const {
  if (inputs.size() != targets.size()) {
    throw std::invalid_argument("batch inputs/targets mismatch");
  }
  return backward_impl(params, inputs, [&](std::size_t s, const Vec& pred, Vec& delta) {
    if (targets[s].size() != layers_.back()) {
      throw std::invalid_argument("sample shape mismatch");
    }
    double sample_loss = 0.0;
    for (std::size_t j = 0; j < pred.size(); ++j) {
      sample_loss += residual_loss(pred[j] - targets[s][j], loss, &delta[j]);
    }
    return sample_loss;
  });
}

std::pair<double, Vec> Mlp::backward(const Vec& params,
                                     const std::vector<Vec>& inputs,
                                     const std::vector<std::pair<int, double>>& scalar_targets,
                                     const LossSpec& loss,
                                     double* max_abs_output) const {
  if (inputs.size() != scalar_targets.size()) {
    throw std::invalid_argument("batch inputs/targets mismatch");
  }
  if (max_abs_output) *max_abs_output = 0.0;
  return backward_impl(params, inputs, [&](std::size_t s, const Vec& pred, Vec& delta) {
    const auto [j, target] = scalar_targets[s];
    if (j < 0 || static_cast<std::size_t>(j) >= pred.size()) {
      throw std::invalid_argument("target index out of range");
    }
    if (max_abs_output) {
      for (double q : pred) *max_abs_output = std::max(*max_abs_output, std::fabs(q));
    }
    std::fill(delta.begin(), delta.end(), 0.0);
    return residual_loss(pred[static_cast<std::size_t>(j)] - target, loss,
                         &delta[static_cast<std::size_t>(j)]);
  });
}

double network_hamiltonian(const OptState& state, const OptimizerConfig& cfg,
                           double j_value) {
  const PhysicalParams phys = hyper_to_physics(cfg.alpha, cfg.beta1, cfg.delta);
  const double mc2 = phys.m * phys.m * phys.c * phys.c;
  double kinetic = 0.0;
  const double inv = -1.0 / (1.0 - cfg.beta1);
  for (double vi : state.v) {
    const double p = vi * inv;
    kinetic += phys.c * std::sqrt(p * p + mc2);
  }
  return kinetic + j_value;
}

}  // namespace radopt
