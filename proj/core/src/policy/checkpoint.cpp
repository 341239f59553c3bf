#include "linevo/policy/checkpoint.hpp"

#include <fstream>

#include "linevo/common/errors.hpp"
#include "linevo/common/numfmt.hpp"
#include "linevo/es/snapshot.hpp"

namespace linevo::policy {

nlohmann::json PolicyCheckpoint::to_json() const {
  return {{"env_id", env_id},
          {"obs_dim", obs_dim},
          {"action_space", action_space.to_json()},
          {"genome", es::vector_to_json(genome)},
          {"normalizer", normalizer.to_json()},
          {"generation", generation},
          {"master_seed", std::to_string(master_seed)}};
}

PolicyCheckpoint PolicyCheckpoint::from_json(const nlohmann::json& j) {
  PolicyCheckpoint c;
  c.env_id = j.at("env_id").get<std::string>();
  c.obs_dim = j.at("obs_dim").get<std::size_t>();
  c.action_space = ActionSpace::from_json(j.at("action_space"));
  c.genome = es::vector_from_json(j.at("genome"));
  c.normalizer = ObsNormalizer::from_json(j.at("normalizer"));
  c.generation = j.at("generation").get<std::uint64_t>();
  const auto& seed = j.at("master_seed");
  c.master_seed = seed.is_string() ? parse_u64(seed.get<std::string>()) : seed.get<std::uint64_t>();
  if (static_cast<std::size_t>(c.genome.size()) != genome_dim(c.obs_dim, c.action_space)) {
    throw InvalidArgument("checkpoint genome length inconsistent with obs_dim/action_space");
  }
  return c;
}

void PolicyCheckpoint::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << to_json().dump(2) << '\n';
}

PolicyCheckpoint PolicyCheckpoint::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  return from_json(nlohmann::json::parse(in));
}

}  // namespace linevo::policy
