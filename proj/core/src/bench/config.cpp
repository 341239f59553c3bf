#include "linevo/bench/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "linevo/common/errors.hpp"
#include "linevo/common/numfmt.hpp"
#include "linevo/env/environment.hpp"
#include "linevo/policy/action_space.hpp"

namespace linevo::bench {

EnvDefaults env_defaults(const std::string& env_id) {
  std::string id;
  try {
    id = env::canonical_env_id(env_id);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (id == "CartPole-v1") return {0.1, 4, 475.0, 500000};
  if (id == "Acrobot-v1") return {0.05, 4, -100.0, 500000};
  if (id == "Pendulum-v1") return {0.1, std::nullopt, -100.0, 500000};
  throw ConfigError("no defaults for environment " + env_id);
}

ExperimentConfig default_config(const std::string& env_id) {
  const EnvDefaults d = env_defaults(env_id);
  ExperimentConfig c;
  c.env_id = env::canonical_env_id(env_id);
  c.variants = {es::Variant::kCsa, es::Variant::kSepCma, es::Variant::kFullCma};
  c.sigma0 = d.sigma0;
  c.lambda = d.lambda;
  c.budget_timesteps = d.budget_timesteps;
  c.seeds = {0, 1, 2, 3, 4};
  c.threshold = d.threshold;
  c.output_dir = default_output_dir();
  return c;
}

std::size_t ExperimentConfig::genome_dim() const {
  const env::EnvSpec spec = env::env_spec(env_id);
  return policy::genome_dim(spec.obs_dim, spec.action_space);
}

std::size_t ExperimentConfig::resolved_lambda() const {
  return lambda ? *lambda : es::default_lambda(genome_dim(), es::LambdaRule::kRl);
}

eval::TrainConfig ExperimentConfig::train_config(es::Variant variant, std::uint64_t seed) const {
  eval::TrainConfig t;
  t.env_id = env_id;
  t.variant = variant;
  t.sigma0 = sigma0;
  t.lambda = resolved_lambda();
  t.budget_timesteps = budget_timesteps;
  t.seed = seed;
  t.fitness = fitness;
  t.test_every = test_every;
  return t;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw ConfigError("seeds list is empty");
  if (variants.empty()) throw ConfigError("no ES variant given");
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw ConfigError("sigma0 must be positive");
  if (lambda && *lambda < 2) throw ConfigError("lambda must be at least 2");
  if (budget_timesteps == 0) throw ConfigError("budget_timesteps must be positive");
  if (test_every == 0) throw ConfigError("test_every must be positive");
  if (fitness.train_episodes == 0 || fitness.test_episodes == 0) throw ConfigError("episode counts must be positive");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json vs = nlohmann::json::array();
  for (auto v : variants) vs.push_back(std::string(es::variant_name(v)));
  nlohmann::json ss = nlohmann::json::array();
  for (auto s : seeds) ss.push_back(std::to_string(s));
  return {{"env_id", env_id},
          {"variants", vs},
          {"sigma0", sigma0},
          {"lambda", resolved_lambda()},
          {"lambda_rule", lambda ? "explicit" : "default"},
          {"budget_timesteps", budget_timesteps},
          {"seeds", ss},
          {"parallelism", parallelism},
          {"fitness_spec", fitness.to_json()},
          {"output_dir", output_dir.string()},
          {"threshold", threshold},
          {"test_every", test_every}};
}

namespace {

std::uint64_t seed_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  if (j.is_string()) {
    try {
      return parse_u64(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("invalid seed: " + j.dump());
}

es::Variant variant_from_json(const nlohmann::json& j) {
  if (!j.is_string()) throw ConfigError("variant must be a string");
  try {
    return es::parse_variant(j.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("env_id") || !j["env_id"].is_string()) throw ConfigError("config needs a string env_id");
  ExperimentConfig c = default_config(j["env_id"].get<std::string>());
  try {
    if (j.contains("variant")) c.variants = {variant_from_json(j["variant"])};
    if (j.contains("variants")) {
      if (!j["variants"].is_array()) throw ConfigError("variants must be a list");
      c.variants.clear();
      for (const auto& v : j["variants"]) c.variants.push_back(variant_from_json(v));
    }
    if (j.contains("sigma0")) c.sigma0 = j["sigma0"].get<double>();
    if (j.contains("lambda")) {
      const auto& l = j["lambda"];
      if (l.is_string() && l.get<std::string>() == "default") {
        c.lambda.reset();
      } else if (l.is_number_integer() && l.get<std::int64_t>() >= 0) {
        c.lambda = l.get<std::size_t>();
      } else {
        throw ConfigError("lambda must be an integer or \"default\"");
      }
    }
    if (j.contains("budget_timesteps")) c.budget_timesteps = j["budget_timesteps"].get<std::uint64_t>();
    if (j.contains("seeds")) {
      if (!j["seeds"].is_array()) throw ConfigError("seeds must be a list");
      c.seeds.clear();
      for (const auto& s : j["seeds"]) c.seeds.push_back(seed_from_json(s));
    }
    if (j.contains("parallelism")) c.parallelism = j["parallelism"].get<std::size_t>();
    if (j.contains("fitness_spec")) c.fitness = eval::FitnessSpec::from_json(j["fitness_spec"]);
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("threshold")) c.threshold = j["threshold"].get<double>();
    if (j.contains("test_every")) c.test_every = j["test_every"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return ExperimentConfig::from_json(j);
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "runs";
}

void ensure_writable_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw OutputError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
  const auto probe = dir / ".linevo_write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok")) throw OutputError("output directory is not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

}  // namespace linevo::bench
