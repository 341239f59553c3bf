#pragma once

#include <cstddef>
#include <variant>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace linevo::policy {

/// Discrete(k) or a bounded box. Construct through the factories, which
/// validate the bounds.
class ActionSpace {
 public:
  static ActionSpace discrete(std::size_t k);
  static ActionSpace box(Eigen::VectorXd low, Eigen::VectorXd high);

  bool is_discrete() const noexcept { return k_ > 0; }
  std::size_t num_actions() const noexcept { return k_; }
  const Eigen::VectorXd& low() const noexcept { return low_; }
  const Eigen::VectorXd& high() const noexcept { return high_; }

  /// Rows of the policy matrix: k for discrete, box dimension otherwise.
  std::size_t act_dim() const noexcept;

  nlohmann::json to_json() const;
  static ActionSpace from_json(const nlohmann::json& j);

  bool operator==(const ActionSpace& other) const;

 private:
  ActionSpace() = default;
  std::size_t k_ = 0;
  Eigen::VectorXd low_;
  Eigen::VectorXd high_;
};

/// Discrete index or continuous vector.
using Action = std::variant<std::size_t, Eigen::VectorXd>;

/// Number of policy weights: obs_dim x act_dim (no bias).
std::size_t genome_dim(std::size_t obs_dim, const ActionSpace& space);

}  // namespace linevo::policy
