#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "linevo/policy/linear_policy.hpp"

namespace linevo::policy {

/// Saved policy: {env_id, obs_dim, action_space, genome, normalizer
/// {count, mean, m2}, generation, master_seed}.
struct PolicyCheckpoint {
  std::string env_id;
  std::size_t obs_dim = 0;
  ActionSpace action_space = ActionSpace::discrete(2);
  Eigen::VectorXd genome;
  ObsNormalizer normalizer;
  std::uint64_t generation = 0;
  std::uint64_t master_seed = 0;

  LinearPolicy policy() const { return LinearPolicy(genome, obs_dim, action_space); }

  nlohmann::json to_json() const;
  static PolicyCheckpoint from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& path) const;
  static PolicyCheckpoint load(const std::filesystem::path& path);
};

}  // namespace linevo::policy
