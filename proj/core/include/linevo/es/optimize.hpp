#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "linevo/es/strategy.hpp"

namespace linevo::es {

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Objective failure annotated with where it happened.
class ObjectiveError : public std::runtime_error {
 public:
  ObjectiveError(std::uint64_t generation, std::size_t index, const std::string& what);
  std::uint64_t generation() const noexcept { return generation_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::uint64_t generation_;
  std::size_t index_;
};

struct OptimizeOptions {
  Variant variant = Variant::kFullCma;
  double sigma0 = 1.0;
  Eigen::VectorXd m0;
  std::optional<std::size_t> lambda;
  std::uint64_t budget_evals = 0;
  std::optional<double> target;  // stop once the best value reaches it
  std::uint64_t seed = 0;
  Direction direction = Direction::kMinimize;
  // Called with the strategy before each ask (trace hooks).
  std::function<void(const Strategy&)> on_generation;
};

struct GenerationRecord {
  std::uint64_t generation = 0;
  std::uint64_t evaluations = 0;  // cumulative, including this generation
  double best_value = 0.0;        // best of this generation
  double best_so_far = 0.0;
  double sigma = 0.0;             // sigma used to sample this generation
};

struct OptimizeResult {
  Eigen::VectorXd best_x;
  double best_value = 0.0;
  std::uint64_t evaluations = 0;
  bool target_reached = false;
  std::vector<GenerationRecord> history;
  Strategy final_strategy;
};

/// Runs ask/evaluate/tell until the evaluation budget is spent or the
/// target is met. Internally the ranking always maximises; minimisation is
/// handled by negating the objective. With a target, the initial mean is
/// evaluated once first so an already-solved start returns immediately.
OptimizeResult optimize(const Objective& objective, const OptimizeOptions& options);

}  // namespace linevo::es
