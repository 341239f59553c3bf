#include "linevo/eval/rollout.hpp"

#include <algorithm>

#include "linevo/common/errors.hpp"
#include "linevo/common/seeding.hpp"

namespace linevo::eval {

nlohmann::json FitnessSpec::to_json() const {
  return {{"train_episodes", train_episodes},
          {"test_episodes", test_episodes},
          {"shaping", shaping.to_json()},
          {"common_random_numbers", common_random_numbers}};
}

FitnessSpec FitnessSpec::from_json(const nlohmann::json& j) {
  FitnessSpec s;
  s.train_episodes = j.value("train_episodes", s.train_episodes);
  s.test_episodes = j.value("test_episodes", s.test_episodes);
  if (j.contains("shaping")) s.shaping = env::RewardShaping::from_json(j.at("shaping"));
  s.common_random_numbers = j.value("common_random_numbers", s.common_random_numbers);
  if (s.train_episodes == 0) throw InvalidArgument("train_episodes must be >= 1");
  if (s.test_episodes == 0) throw InvalidArgument("test_episodes must be >= 1");
  return s;
}

RolloutResult rollout(const policy::LinearPolicy& policy, const policy::ObsNormalizer& normalizer,
                      env::Environment& env, std::uint64_t episode_seed, const env::RewardShaping& shaping,
                      bool update_normalizer) {
  RolloutResult out;
  if (update_normalizer) out.delta = policy::ObsNormalizer(static_cast<Eigen::Index>(env.spec().obs_dim));

  Eigen::VectorXd obs = env.reset(episode_seed);
  while (true) {
    if (update_normalizer) out.delta.update(obs);
    const policy::Action action = policy.act(normalizer, obs);
    env::StepResult step = env.step(action);
    out.raw_return += step.reward;
    out.shaped_return += env::shape_reward(step, shaping);
    ++out.timesteps;
    if (step.terminated || step.truncated) break;
    obs = std::move(step.obs);
  }
  return out;
}

std::uint64_t train_episode_seed(std::uint64_t master_seed, std::uint64_t generation, std::size_t index,
                                 std::size_t episode, bool common_random_numbers) {
  const auto tag = static_cast<std::uint64_t>(StreamTag::kTrainEpisode);
  if (common_random_numbers) return derive_seed({tag, master_seed, generation, episode});
  return derive_seed({tag, master_seed, generation, index, episode, 1});
}

std::vector<std::uint64_t> test_episode_seeds(std::uint64_t master_seed, std::uint64_t generation, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  const auto tag = static_cast<std::uint64_t>(StreamTag::kTestEpisode);
  for (std::size_t k = 0; k < count; ++k) seeds[k] = derive_seed({tag, master_seed, generation, k});
  return seeds;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

TestReport test_policy(const policy::LinearPolicy& policy, const policy::ObsNormalizer& normalizer,
                       std::string_view env_id, std::span<const std::uint64_t> seeds) {
  const policy::ObsNormalizer frozen = normalizer.frozen_copy();
  auto env = env::make_env(env_id);
  TestReport report;
  report.returns.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    report.returns.push_back(rollout(policy, frozen, *env, seed, env::RewardShaping::identity(), false).raw_return);
  }
  report.median_return = median(report.returns);
  return report;
}

}  // namespace linevo::eval
