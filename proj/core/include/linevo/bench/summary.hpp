#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linevo/eval/train.hpp"

namespace linevo::bench {

struct TrialSummary {
  std::uint64_t seed = 0;
  std::string status = "ok";  // "ok" or "failed"
  std::string failure;
  std::optional<double> max_median_return;  // empty if no generation was tested
  std::optional<std::uint64_t> timesteps_to_threshold;
  std::uint64_t generations = 0;
  std::uint64_t timesteps = 0;

  nlohmann::json to_json() const;
  static TrialSummary from_json(const nlohmann::json& j);
};

/// Statistics of one curve: best median test return over the run and the
/// first cumulative timestep at which the median met `threshold`.
TrialSummary summarize_curve(std::span<const eval::TrainRecord> history, double threshold);

struct SummaryRow {
  std::string env_id;
  std::string variant;
  std::optional<double> max_median_return;         // mean over seeds
  std::optional<double> max_median_return_median;  // median over seeds
  std::optional<std::uint64_t> timesteps_to_threshold;  // min over seeds
  std::size_t solved_trials = 0;
  std::vector<TrialSummary> trials;

  nlohmann::json to_json() const;
};

/// Aggregates trials in the order given. Trials without any tested
/// generation are listed but do not enter the averages.
SummaryRow make_row(const std::string& env_id, const std::string& variant, std::vector<TrialSummary> trials);

double median_of(std::vector<double> values);

}  // namespace linevo::bench
