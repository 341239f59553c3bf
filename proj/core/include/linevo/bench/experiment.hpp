#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linevo/bench/config.hpp"
#include "linevo/bench/summary.hpp"
#include "linevo/eval/generation.hpp"

namespace linevo::bench {

/// <output_dir>/<env_id>/<variant>/seed_<seed>
std::filesystem::path trial_dir(const ExperimentConfig& config, es::Variant variant, std::uint64_t seed);
std::filesystem::path summary_path(const ExperimentConfig& config);

struct TrialOutcome {
  es::Variant variant = es::Variant::kCsa;
  std::uint64_t seed = 0;
  eval::TrainResult result;
  TrialSummary summary;
  std::filesystem::path dir;
};

/// Trains one (variant, seed) pair and writes curve.csv, checkpoint.json
/// (best tested policy) and trial.json into its trial directory.
TrialOutcome run_trial(const ExperimentConfig& config, es::Variant variant, std::uint64_t seed,
                       eval::GenerationEvaluator& evaluator);

struct ExperimentOutcome {
  std::vector<TrialOutcome> trials;
  std::vector<SummaryRow> rows;  // one per variant
  nlohmann::json summary;
};

using ProgressFn = std::function<void(const TrialOutcome&)>;

/// All variants x seeds, then summary.json. Throws ConfigError or
/// OutputError before any training starts if the setup is unusable.
ExperimentOutcome run_experiment(const ExperimentConfig& config, eval::GenerationEvaluator& evaluator,
                                 const ProgressFn& progress = {});

/// summary.json contents for already-finished trials.
nlohmann::json make_summary(const ExperimentConfig& config, const std::vector<SummaryRow>& rows,
                            const std::string& mode);

}  // namespace linevo::bench
