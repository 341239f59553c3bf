#include "linevo/bench/experiment.hpp"

#include <fstream>

#include "linevo/eval/curve_csv.hpp"

namespace linevo::bench {

std::filesystem::path trial_dir(const ExperimentConfig& config, es::Variant variant, std::uint64_t seed) {
  return config.output_dir / config.env_id / std::string(es::variant_name(variant)) / ("seed_" + std::to_string(seed));
}

std::filesystem::path summary_path(const ExperimentConfig& config) {
  return config.output_dir / config.env_id / "summary.json";
}

namespace {

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw OutputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw OutputError("cannot write " + path.string());
}

}  // namespace

TrialOutcome run_trial(const ExperimentConfig& config, es::Variant variant, std::uint64_t seed,
                       eval::GenerationEvaluator& evaluator) {
  TrialOutcome t;
  t.variant = variant;
  t.seed = seed;
  t.dir = trial_dir(config, variant, seed);
  ensure_writable_dir(t.dir);

  t.result = eval::train(config.train_config(variant, seed), evaluator);
  t.summary = summarize_curve(t.result.history, config.threshold);
  t.summary.seed = seed;
  if (t.result.failed) {
    t.summary.status = "failed";
    t.summary.failure = t.result.failure;
  }

  try {
    eval::write_curve_csv(t.dir / "curve.csv", t.result.history, config.fitness.test_episodes);
  } catch (const std::exception& e) {
    throw OutputError(e.what());
  }
  if (t.result.best) t.result.best->save(t.dir / "checkpoint.json");

  nlohmann::json trial = t.summary.to_json();
  trial["env_id"] = config.env_id;
  trial["variant"] = std::string(es::variant_name(variant));
  trial["lambda"] = t.result.lambda;
  trial["genome_dim"] = t.result.genome_dim;
  trial["threshold"] = config.threshold;
  trial["artifact_version"] = kArtifactVersion;
  write_json(t.dir / "trial.json", trial);
  return t;
}

nlohmann::json make_summary(const ExperimentConfig& config, const std::vector<SummaryRow>& rows,
                            const std::string& mode) {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) rs.push_back(r.to_json());
  return {{"artifact_version", kArtifactVersion},
          {"mode", mode},
          {"config", config.to_json()},
          {"resolved_lambda", config.resolved_lambda()},
          {"genome_dim", config.genome_dim()},
          {"threshold", config.threshold},
          {"rows", rs}};
}

ExperimentOutcome run_experiment(const ExperimentConfig& config, eval::GenerationEvaluator& evaluator,
                                 const ProgressFn& progress) {
  config.validate();
  ensure_writable_dir(config.output_dir / config.env_id);

  ExperimentOutcome out;
  for (auto variant : config.variants) {
    std::vector<TrialSummary> trials;
    for (auto seed : config.seeds) {
      TrialOutcome t = run_trial(config, variant, seed, evaluator);
      trials.push_back(t.summary);
      if (progress) progress(t);
      out.trials.push_back(std::move(t));
    }
    out.rows.push_back(make_row(config.env_id, std::string(es::variant_name(variant)), std::move(trials)));
  }
  out.summary = make_summary(config, out.rows, "local");
  write_json(summary_path(config), out.summary);
  return out;
}

}  // namespace linevo::bench
