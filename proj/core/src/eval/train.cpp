#include "linevo/eval/train.hpp"

#include <cmath>

#include "linevo/common/errors.hpp"
#include "linevo/env/environment.hpp"
#include "linevo/es/strategy.hpp"

namespace linevo::eval {

TrainResult train(const TrainConfig& config, GenerationEvaluator& evaluator,
                  const std::function<void(const TrainRecord&)>& on_record) {
  const env::EnvSpec spec = env::env_spec(config.env_id);
  const std::string env_id = spec.env_id;
  if (config.budget_timesteps == 0) throw InvalidArgument("budget_timesteps must be positive");
  if (config.test_every == 0) throw InvalidArgument("test_every must be >= 1");

  const std::size_t n = policy::genome_dim(spec.obs_dim, spec.action_space);
  es::Strategy strategy = es::new_strategy(config.variant, n, config.sigma0, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)),
                                           config.lambda, config.seed, es::LambdaRule::kRl);

  TrainResult result;
  result.lambda = strategy.params.lambda;
  result.genome_dim = n;
  result.best_median_test_return = -INFINITY;

  policy::ObsNormalizer normalizer(static_cast<Eigen::Index>(spec.obs_dim));
  std::uint64_t cumulative = 0;
  TrainRecord last_test;

  try {
    while (cumulative < config.budget_timesteps) {
      const std::uint64_t gen = strategy.state.generation;
      if (config.max_generations && gen >= *config.max_generations) break;
      auto candidates = es::ask(strategy.params, strategy.state);
      const policy::ObsNormalizer snapshot = normalizer.frozen_copy();

      const GenerationRequest request{strategy.params, strategy.state, candidates, snapshot, env_id, config.fitness};
      std::vector<CandidateResult> results = evaluator.evaluate(request);
      if (results.size() != candidates.size()) throw EvaluationError(results.size(), "evaluator returned wrong count");

      std::size_t best = 0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        candidates[i].fitness = results[i].fitness;
        candidates[i].timesteps = results[i].timesteps;
        cumulative += results[i].timesteps;
        if (results[i].fitness > results[best].fitness) best = i;
      }
      normalizer.merge(merge_deltas(results, static_cast<Eigen::Index>(spec.obs_dim)));

      TrainRecord rec;
      rec.generation = gen;
      rec.cumulative_timesteps = cumulative;
      rec.best_train_fitness = results[best].fitness;
      rec.sigma = strategy.state.sigma;

      if (gen % config.test_every == 0) {
        const policy::LinearPolicy elite(candidates[best].x, spec.obs_dim, spec.action_space);
        const auto seeds = test_episode_seeds(config.seed, gen, config.fitness.test_episodes);
        const TestReport report = test_policy(elite, snapshot, env_id, seeds);
        rec.median_test_return = report.median_return;
        rec.test_returns = report.returns;
        last_test = rec;
        if (report.median_return > result.best_median_test_return) {
          result.best_median_test_return = report.median_return;
          policy::PolicyCheckpoint cp{env_id,       spec.obs_dim, spec.action_space, candidates[best].x,
                                      policy::ObsNormalizer(snapshot.count(), snapshot.mean(), snapshot.m2()),
                                      gen,          config.seed};
          result.best = std::move(cp);
        }
      } else {
        rec.median_test_return = last_test.median_test_return;
        rec.test_returns = last_test.test_returns;
      }

      result.history.push_back(rec);
      if (on_record) on_record(rec);

      strategy.state = es::tell(strategy.params, strategy.state, candidates, es::Direction::kMaximize);
    }
  } catch (const NumericalDegeneracy& e) {
    result.failed = true;
    result.failure = e.what();
  }
  return result;
}

}  // namespace linevo::eval
