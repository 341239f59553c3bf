#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "linevo/es/params.hpp"
#include "linevo/eval/generation.hpp"
#include "linevo/policy/checkpoint.hpp"

namespace linevo::eval {

struct TrainConfig {
  std::string env_id;
  es::Variant variant = es::Variant::kCsa;
  double sigma0 = 0.1;
  std::optional<std::size_t> lambda;  // nullopt: min(128, max(32, ceil(n/2)))
  std::uint64_t budget_timesteps = 0;
  std::uint64_t seed = 0;
  FitnessSpec fitness;
  std::size_t test_every = 1;  // generations between test-protocol runs
  std::optional<std::uint64_t> max_generations;  // stop early after this many generations
};

/// One row per generation.
struct TrainRecord {
  std::uint64_t generation = 0;
  std::uint64_t cumulative_timesteps = 0;  // training steps only
  double median_test_return = 0.0;
  std::vector<double> test_returns;
  double best_train_fitness = 0.0;
  double sigma = 0.0;  // step size the generation was sampled with
};

struct TrainResult {
  std::vector<TrainRecord> history;
  std::optional<policy::PolicyCheckpoint> best;  // highest median test return seen
  double best_median_test_return = 0.0;
  std::size_t lambda = 0;
  std::size_t genome_dim = 0;
  bool failed = false;
  std::string failure;
};

/// ask -> evaluate -> merge normalizer deltas -> tell, until the training
/// timestep budget is consumed. Each tested generation runs the test
/// protocol on its best training candidate, using the normalizer snapshot
/// that candidate was trained with. Numerical degeneracy ends the trial
/// with failed = true and the history so far.
TrainResult train(const TrainConfig& config, GenerationEvaluator& evaluator,
                  const std::function<void(const TrainRecord&)>& on_record = {});

}  // namespace linevo::eval
