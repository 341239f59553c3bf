#include "linevo/es/optimize.hpp"

#include <cmath>
#include <string>

#include "linevo/common/errors.hpp"

namespace linevo::es {

ObjectiveError::ObjectiveError(std::uint64_t generation, std::size_t index, const std::string& what)
    : std::runtime_error("objective failed at generation " + std::to_string(generation) + ", candidate " +
                         std::to_string(index) + ": " + what),
      generation_(generation),
      index_(index) {}

namespace {

bool better(double a, double b, Direction d) { return d == Direction::kMinimize ? a < b : a > b; }

bool reached(double value, const std::optional<double>& target, Direction d) {
  if (!target) return false;
  return d == Direction::kMinimize ? value <= *target : value >= *target;
}

}  // namespace

OptimizeResult optimize(const Objective& objective, const OptimizeOptions& options) {
  const auto n = static_cast<std::size_t>(options.m0.size());
  Strategy strategy = new_strategy(options.variant, n, options.sigma0, options.m0, options.lambda, options.seed);
  if (options.budget_evals < strategy.params.lambda) {
    throw InvalidArgument("budget_evals must be at least lambda (" + std::to_string(strategy.params.lambda) + ")");
  }

  const double sign = options.direction == Direction::kMinimize ? -1.0 : 1.0;
  auto evaluate = [&](const Eigen::VectorXd& x, std::uint64_t gen, std::size_t index) {
    double v = 0.0;
    try {
      v = objective(x);
    } catch (const std::exception& e) {
      throw ObjectiveError(gen, index, e.what());
    }
    if (!std::isfinite(v)) throw ObjectiveError(gen, index, "non-finite objective value");
    return v;
  };

  OptimizeResult result;
  result.best_x = options.m0;
  result.best_value = options.direction == Direction::kMinimize ? INFINITY : -INFINITY;

  if (options.target) {
    const double v0 = evaluate(options.m0, 0, 0);
    result.evaluations = 1;
    result.best_value = v0;
    if (reached(v0, options.target, options.direction)) {
      result.target_reached = true;
      result.final_strategy = strategy;
      return result;
    }
  }

  while (result.evaluations + strategy.params.lambda <= options.budget_evals) {
    if (options.on_generation) options.on_generation(strategy);
    auto candidates = ask(strategy.params, strategy.state);
    GenerationRecord rec;
    rec.generation = strategy.state.generation;
    rec.sigma = strategy.state.sigma;
    rec.best_value = options.direction == Direction::kMinimize ? INFINITY : -INFINITY;
    for (auto& c : candidates) {
      const double v = evaluate(c.x, strategy.state.generation, c.index);
      c.fitness = sign * v;
      if (better(v, rec.best_value, options.direction)) rec.best_value = v;
      if (better(v, result.best_value, options.direction)) {
        result.best_value = v;
        result.best_x = c.x;
      }
    }
    result.evaluations += candidates.size();
    rec.evaluations = result.evaluations;
    rec.best_so_far = result.best_value;
    result.history.push_back(rec);

    strategy.state = tell(strategy.params, strategy.state, candidates, Direction::kMaximize);
    if (reached(result.best_value, options.target, options.direction)) {
      result.target_reached = true;
      break;
    }
  }
  result.final_strategy = std::move(strategy);
  return result;
}

}  // namespace linevo::es
