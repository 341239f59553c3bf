#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "linevo/env/environment.hpp"
#include "linevo/env/shaping.hpp"
#include "linevo/policy/linear_policy.hpp"
#include "linevo/policy/obs_normalizer.hpp"

namespace linevo::eval {

struct FitnessSpec {
  std::size_t train_episodes = 1;
  std::size_t test_episodes = 5;
  env::RewardShaping shaping;
  bool common_random_numbers = true;

  nlohmann::json to_json() const;
  static FitnessSpec from_json(const nlohmann::json& j);
};

struct RolloutResult {
  double raw_return = 0.0;
  double shaped_return = 0.0;
  std::uint64_t timesteps = 0;
  policy::ObsNormalizer delta;  // empty unless update_normalizer was set
};

/// Plays one episode from reset(episode_seed) until termination or
/// truncation. When update_normalizer is set, every observation fed to the
/// policy is also accumulated into a fresh local normalizer returned as
/// `delta`; `normalizer` itself is never modified.
RolloutResult rollout(const policy::LinearPolicy& policy, const policy::ObsNormalizer& normalizer,
                      env::Environment& env, std::uint64_t episode_seed, const env::RewardShaping& shaping,
                      bool update_normalizer);

/// Training episode seed. With common random numbers every candidate of a
/// generation shares the seed of a given episode slot.
std::uint64_t train_episode_seed(std::uint64_t master_seed, std::uint64_t generation, std::size_t index,
                                 std::size_t episode, bool common_random_numbers);

std::vector<std::uint64_t> test_episode_seeds(std::uint64_t master_seed, std::uint64_t generation, std::size_t count);

/// Median; the mean of the two middle values for even sizes.
double median(std::vector<double> values);

struct TestReport {
  double median_return = 0.0;
  std::vector<double> returns;
};

/// Runs one raw-reward episode per seed with a frozen copy of the
/// normalizer and reports the median.
TestReport test_policy(const policy::LinearPolicy& policy, const policy::ObsNormalizer& normalizer,
                       std::string_view env_id, std::span<const std::uint64_t> seeds);

}  // namespace linevo::eval
