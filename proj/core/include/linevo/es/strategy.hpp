#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "linevo/es/covariance.hpp"
#include "linevo/es/params.hpp"

namespace linevo::es {

/// The search distribution N(mean, sigma^2 C) plus its evolution paths.
struct DistributionState {
  Eigen::VectorXd mean;
  double sigma = 1.0;
  Covariance cov;
  Eigen::VectorXd p_sigma;
  Eigen::VectorXd p_c;
  std::uint64_t generation = 0;
  std::uint64_t master_seed = 0;
};

struct Candidate {
  std::size_t index = 0;
  Eigen::VectorXd z;  // standard-normal draw
  Eigen::VectorXd x;  // mean + sigma * A z
  std::optional<double> fitness;
  std::uint64_t timesteps = 0;
};

enum class Direction { kMaximize, kMinimize };

struct Strategy {
  StrategyParams params;
  DistributionState state;
};

/// Builds params and the initial state (identity covariance, zero paths,
/// generation 0). Without an explicit lambda, `rule` picks the default.
Strategy new_strategy(Variant variant, std::size_t n, double sigma0, const Eigen::VectorXd& m0,
                      std::optional<std::size_t> lambda = std::nullopt, std::uint64_t master_seed = 0,
                      LambdaRule rule = LambdaRule::kCma);

/// Standard-normal vector for candidate `index` of `generation`. Each
/// candidate owns an independent stream so any process can redraw it.
Eigen::VectorXd draw_standard_normal(std::uint64_t master_seed, std::uint64_t generation,
                                     std::size_t index, std::size_t n);

/// mean + sigma * A z.
Eigen::VectorXd sample_genome(const Eigen::VectorXd& mean, double sigma, const Covariance& cov,
                              const Eigen::VectorXd& z);

/// Samples lambda candidates for the current generation.
std::vector<Candidate> ask(const StrategyParams& params, const DistributionState& state);

/// Candidate positions best-first. Ties keep the lower index first.
std::vector<std::size_t> rank_candidates(std::span<const Candidate> candidates, Direction direction);

/// Updates mean, step size, paths and covariance from one evaluated
/// generation. Recombination uses each candidate's z (the stored
/// perturbation), which equals (x - mean) / (sigma A) up to rounding and
/// keeps the adaptation state independent of where the mean sits.
DistributionState tell(const StrategyParams& params, const DistributionState& state,
                       std::span<const Candidate> candidates, Direction direction = Direction::kMaximize);

/// Everything a remote process needs to reproduce ask() for one generation.
struct GenerationHeader {
  std::uint64_t master_seed = 0;
  std::uint64_t generation = 0;
  Eigen::VectorXd mean;
  double sigma = 1.0;
  Covariance cov;
  std::uint64_t cov_digest = 0;
};

GenerationHeader make_generation_header(const DistributionState& state);

/// Re-derives candidate `index` from a header. Bitwise equal to ask()'s x.
/// Throws DesyncError if the covariance does not match its digest and
/// InvalidArgument if index >= lambda.
Eigen::VectorXd sample_candidate_from_seed(const GenerationHeader& header, std::size_t index,
                                           const StrategyParams& params);

}  // namespace linevo::es
