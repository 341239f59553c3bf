#include "linevo/bench/summary.hpp"

#include <algorithm>
#include <limits>

#include "linevo/common/numfmt.hpp"

namespace linevo::bench {

namespace {

nlohmann::json opt_real(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }
nlohmann::json opt_steps(const std::optional<std::uint64_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json("unreached");
}

}  // namespace

TrialSummary summarize_curve(std::span<const eval::TrainRecord> history, double threshold) {
  TrialSummary s;
  s.generations = history.size();
  if (!history.empty()) s.timesteps = history.back().cumulative_timesteps;
  for (const auto& r : history) {
    if (!s.max_median_return || r.median_test_return > *s.max_median_return) s.max_median_return = r.median_test_return;
    if (!s.timesteps_to_threshold && r.median_test_return >= threshold) s.timesteps_to_threshold = r.cumulative_timesteps;
  }
  return s;
}

nlohmann::json TrialSummary::to_json() const {
  nlohmann::json j = {{"seed", std::to_string(seed)},
                      {"status", status},
                      {"max_median_return", opt_real(max_median_return)},
                      {"timesteps_to_threshold", opt_steps(timesteps_to_threshold)},
                      {"generations", generations},
                      {"timesteps", timesteps}};
  if (!failure.empty()) j["failure"] = failure;
  return j;
}

TrialSummary TrialSummary::from_json(const nlohmann::json& j) {
  TrialSummary s;
  s.seed = parse_u64(j.at("seed").get<std::string>());
  s.status = j.at("status").get<std::string>();
  if (j.contains("failure")) s.failure = j["failure"].get<std::string>();
  if (!j.at("max_median_return").is_null()) s.max_median_return = j["max_median_return"].get<double>();
  if (j.at("timesteps_to_threshold").is_number()) s.timesteps_to_threshold = j["timesteps_to_threshold"].get<std::uint64_t>();
  s.generations = j.at("generations").get<std::uint64_t>();
  s.timesteps = j.at("timesteps").get<std::uint64_t>();
  return s;
}

double median_of(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  return k % 2 == 1 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

SummaryRow make_row(const std::string& env_id, const std::string& variant, std::vector<TrialSummary> trials) {
  SummaryRow row;
  row.env_id = env_id;
  row.variant = variant;
  std::vector<double> maxima;
  for (const auto& t : trials) {
    if (t.max_median_return) maxima.push_back(*t.max_median_return);
    if (t.timesteps_to_threshold) {
      ++row.solved_trials;
      if (!row.timesteps_to_threshold || *t.timesteps_to_threshold < *row.timesteps_to_threshold) {
        row.timesteps_to_threshold = t.timesteps_to_threshold;
      }
    }
  }
  if (!maxima.empty()) {
    double sum = 0.0;
    for (double v : maxima) sum += v;
    row.max_median_return = sum / static_cast<double>(maxima.size());
    row.max_median_return_median = median_of(maxima);
  }
  row.trials = std::move(trials);
  return row;
}

nlohmann::json SummaryRow::to_json() const {
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : trials) ts.push_back(t.to_json());
  return {{"env_id", env_id},
          {"variant", variant},
          {"max_median_return", opt_real(max_median_return)},
          {"max_median_return_median", opt_real(max_median_return_median)},
          {"timesteps_to_threshold", opt_steps(timesteps_to_threshold)},
          {"solved_trials", solved_trials},
          {"trials", ts}};
}

}  // namespace linevo::bench
