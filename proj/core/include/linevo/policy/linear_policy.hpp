#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "linevo/policy/action_space.hpp"
#include "linevo/policy/obs_normalizer.hpp"

namespace linevo::policy {

using WeightMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// act_dim x obs_dim weight matrix mapping normalised observations to
/// action logits. The genome is the row-major flattening (one row per
/// action output).
class LinearPolicy {
 public:
  LinearPolicy(const Eigen::VectorXd& genome, std::size_t obs_dim, ActionSpace space);

  static LinearPolicy zeros(std::size_t obs_dim, ActionSpace space);

  const WeightMatrix& weights() const noexcept { return weights_; }
  const ActionSpace& space() const noexcept { return space_; }
  std::size_t obs_dim() const noexcept { return static_cast<std::size_t>(weights_.cols()); }

  Eigen::VectorXd flatten() const;

  /// Discrete: argmax of W s (lowest index wins ties). Box: tanh squashed
  /// into [low, high]. Throws InvalidObservation for non-finite input.
  Action act(const ObsNormalizer& normalizer, const Eigen::VectorXd& obs) const;

 private:
  WeightMatrix weights_;
  ActionSpace space_;
};

}  // namespace linevo::policy
