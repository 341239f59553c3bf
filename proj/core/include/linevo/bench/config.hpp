#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linevo/es/params.hpp"
#include "linevo/eval/rollout.hpp"
#include "linevo/eval/train.hpp"

namespace linevo::bench {

/// Bad or inconsistent experiment configuration (CLI exit 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output directory cannot be created or written (CLI exit 3).
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kArtifactVersion = "linevo-0.1.0";
inline constexpr const char* kOutputDirEnv = "LINEVO_OUTPUT_DIR";

struct EnvDefaults {
  double sigma0 = 0.1;
  std::optional<std::size_t> lambda;  // nullopt: the RL default rule
  double threshold = 0.0;
  std::uint64_t budget_timesteps = 500000;
};

/// Hyperparameter table rows. Throws ConfigError for unknown envs.
EnvDefaults env_defaults(const std::string& env_id);

struct ExperimentConfig {
  std::string env_id;
  std::vector<es::Variant> variants;
  double sigma0 = 0.1;
  std::optional<std::size_t> lambda;
  std::uint64_t budget_timesteps = 500000;
  std::vector<std::uint64_t> seeds;
  std::size_t parallelism = 1;
  eval::FitnessSpec fitness;
  std::filesystem::path output_dir;
  double threshold = 0.0;
  std::size_t test_every = 1;

  /// Resolved form: canonical env id, explicit variants, λ as a number.
  nlohmann::json to_json() const;

  /// Missing fields fall back to env_defaults(env_id). `lambda` may be a
  /// number or "default"; `variant` a name or `variants` a list of names.
  static ExperimentConfig from_json(const nlohmann::json& j);

  /// λ actually used, after applying the RL default rule.
  std::size_t resolved_lambda() const;
  std::size_t genome_dim() const;

  eval::TrainConfig train_config(es::Variant variant, std::uint64_t seed) const;

  /// Throws ConfigError on empty seeds, no variants, bad sigma0 etc.
  void validate() const;
};

ExperimentConfig default_config(const std::string& env_id);
ExperimentConfig load_config(const std::filesystem::path& path);

/// $LINEVO_OUTPUT_DIR, or "runs".
std::filesystem::path default_output_dir();

/// Creates `dir` and checks it is writable; throws OutputError otherwise.
void ensure_writable_dir(const std::filesystem::path& dir);

}  // namespace linevo::bench
