#pragma once

#include <vector>

#include "radopt/optimizer.hpp"
#include "radopt/rng.hpp"
#include "radopt/vec.hpp"

namespace radopt {

enum class LossKind { Mse, Huber };

struct LossSpec {
  LossKind kind = LossKind::Mse;
  double huber_delta = 1.0;
};

/// Multilayer perceptron with ReLU hidden activations and a linear output
/// layer. Parameters live in one flat vector (per layer: row-major weight
/// matrix, then biases) so optimizer states can treat the network as a
/// single parameter particle per coordinate.
class Mlp {
 public:
  explicit Mlp(std::vector<std::size_t> layer_sizes);

  std::size_t param_count() const { return param_count_; }
  std::size_t input_size() const { return layers_.front(); }
  std::size_t output_size() const { return layers_.back(); }
  const std::vector<std::size_t>& layer_sizes() const { return layers_; }

  /// He-style initialization, weights scaled by sqrt(2 / fan_in), zero biases.
  Vec init_params(Rng& rng) const;

  Vec forward(const Vec& params, const Vec& input) const;

  /// Mean loss over the batch and its gradient w.r.t. the flat parameters.
  /// Per sample the loss is summed over output coordinates; residuals that
  /// are zero contribute nothing, so masked regression targets work by
  /// copying the prediction into the target at don't-care outputs.
  std::pair<double, Vec> backward(const Vec& params,
                                  const std::vector<Vec>& inputs,
                                  const std::vector<Vec>& targets,
                                  const LossSpec& loss) const;

  /// Scalar-target variant: per sample, only output `scalar_targets[s].first`
  /// carries a residual against `scalar_targets[s].second`; the other outputs
  /// are don't-care. Equivalent to the dense overload with the prediction
  /// copied into the masked outputs, but needs no separate forward pass.
  /// If `max_abs_output` is non-null it receives max_s max_j |prediction|.
  std::pair<double, Vec> backward(const Vec& params,
                                  const std::vector<Vec>& inputs,
                                  const std::vector<std::pair<int, double>>& scalar_targets,
                                  const LossSpec& loss,
                                  double* max_abs_output = nullptr) const;

 private:
  template <typename DeltaFn>
  std::pair<double, Vec> backward_impl(const Vec& params,
                                       const std::vector<Vec>& inputs,
                                       DeltaFn&& delta_fn) const;

  std::vector<std::size_t> layers_;
  std::size_t param_count_ = 0;
  // Flat-vector offset of each layer's weight block; biases follow weights.
  std::vector<std::size_t> offsets_;
};

/// Reconstructs the relativistic Hamiltonian of the training dynamics from
/// optimizer internals: hyperparameters are mapped to physical constants
/// under the h = 1 convention, momenta recovered as p = -v/(1 - beta1), and
///   H = sum_i c sqrt(p_i^2 + m^2 c^2) + J.
/// The rest-energy term is kept, so H differs from the kinetic-only form by
/// a constant; Delta-H traces are unaffected.
double network_hamiltonian(const OptState& state, const OptimizerConfig& cfg,
                           double j_value);

}  // namespace radopt
