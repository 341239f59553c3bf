#include "linevo/eval/generation.hpp"

#include <atomic>
#include <exception>
#include <thread>

namespace linevo::eval {

CandidateResult evaluate_candidate(const Eigen::VectorXd& genome, const policy::ObsNormalizer& normalizer,
                                   const std::string& env_id, const FitnessSpec& spec, std::uint64_t master_seed,
                                   std::uint64_t generation, std::size_t index) {
  auto env = env::make_env(env_id);
  const policy::LinearPolicy policy(genome, env->spec().obs_dim, env->spec().action_space);
  CandidateResult out;
  out.delta = policy::ObsNormalizer(static_cast<Eigen::Index>(env->spec().obs_dim));
  double shaped = 0.0;
  double raw = 0.0;
  for (std::size_t ep = 0; ep < spec.train_episodes; ++ep) {
    const std::uint64_t seed = train_episode_seed(master_seed, generation, index, ep, spec.common_random_numbers);
    RolloutResult r = rollout(policy, normalizer, *env, seed, spec.shaping, true);
    shaped += r.shaped_return;
    raw += r.raw_return;
    out.timesteps += r.timesteps;
    out.delta.merge(r.delta);
  }
  const double k = static_cast<double>(spec.train_episodes);
  out.fitness = shaped / k;
  out.raw_return = raw / k;
  return out;
}

std::vector<CandidateResult> evaluate_generation(std::span<const es::Candidate> candidates, const std::string& env_id,
                                                 const FitnessSpec& spec, std::uint64_t generation,
                                                 std::uint64_t master_seed, const policy::ObsNormalizer& normalizer,
                                                 std::size_t parallelism) {
  const std::size_t count = candidates.size();
  std::vector<CandidateResult> results(count);
  std::vector<std::exception_ptr> errors(count);

  auto run_one = [&](std::size_t i) {
    try {
      results[i] = evaluate_candidate(candidates[i].x, normalizer, env_id, spec, master_seed, generation,
                                      candidates[i].index);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t workers = std::min(parallelism == 0 ? std::size_t{1} : parallelism, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) run_one(i);
      });
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw EvaluationError(candidates[i].index, e.what());
    }
  }
  return results;
}

policy::ObsNormalizer merge_deltas(std::span<const CandidateResult> results, Eigen::Index dim) {
  policy::ObsNormalizer merged(dim);
  for (const auto& r : results) merged.merge(r.delta);
  return merged;
}

std::vector<CandidateResult> LocalEvaluator::evaluate(const GenerationRequest& request) {
  return evaluate_generation(request.candidates, request.env_id, request.spec, request.state.generation,
                             request.state.master_seed, request.normalizer, parallelism_);
}

}  // namespace linevo::eval
