#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "linevo/es/strategy.hpp"
#include "linevo/eval/rollout.hpp"

namespace linevo::eval {

struct CandidateResult {
  double fitness = 0.0;     // mean shaped return over training episodes
  double raw_return = 0.0;  // mean raw return over training episodes
  std::uint64_t timesteps = 0;
  policy::ObsNormalizer delta;
};

/// A rollout failed; the generation is abandoned.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::size_t index, const std::string& what)
      : std::runtime_error("candidate " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Runs the training episodes of one candidate. Pure function of its
/// arguments; local and remote evaluation both go through here.
CandidateResult evaluate_candidate(const Eigen::VectorXd& genome, const policy::ObsNormalizer& normalizer,
                                   const std::string& env_id, const FitnessSpec& spec, std::uint64_t master_seed,
                                   std::uint64_t generation, std::size_t index);

/// Evaluates every candidate, up to `parallelism` at a time. Results are
/// stored by candidate index, so they do not depend on scheduling.
std::vector<CandidateResult> evaluate_generation(std::span<const es::Candidate> candidates, const std::string& env_id,
                                                 const FitnessSpec& spec, std::uint64_t generation,
                                                 std::uint64_t master_seed, const policy::ObsNormalizer& normalizer,
                                                 std::size_t parallelism);

/// Folds per-candidate deltas in index order.
policy::ObsNormalizer merge_deltas(std::span<const CandidateResult> results, Eigen::Index dim);

struct GenerationRequest {
  const es::StrategyParams& params;
  const es::DistributionState& state;
  std::span<const es::Candidate> candidates;
  const policy::ObsNormalizer& normalizer;
  const std::string& env_id;
  const FitnessSpec& spec;
};

/// Where fitness comes from: in-process threads or remote workers.
class GenerationEvaluator {
 public:
  virtual ~GenerationEvaluator() = default;
  virtual std::vector<CandidateResult> evaluate(const GenerationRequest& request) = 0;
};

class LocalEvaluator final : public GenerationEvaluator {
 public:
  explicit LocalEvaluator(std::size_t parallelism = 1) : parallelism_(parallelism == 0 ? 1 : parallelism) {}
  std::vector<CandidateResult> evaluate(const GenerationRequest& request) override;

 private:
  std::size_t parallelism_;
};

}  // namespace linevo::eval
