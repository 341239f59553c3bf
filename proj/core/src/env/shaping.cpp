#include "linevo/env/shaping.hpp"

#include "linevo/common/errors.hpp"

namespace linevo::env {

double shape_reward(const StepResult& step, const RewardShaping& shaping) {
  switch (shaping.mode) {
    case RewardShaping::Mode::kIdentity:
      return step.reward;
    case RewardShaping::Mode::kDropAliveBonus:
      return step.reward - shaping.alive_bonus;
  }
  return step.reward;
}

nlohmann::json RewardShaping::to_json() const {
  if (mode == Mode::kIdentity) return {{"mode", "identity"}};
  return {{"mode", "drop_alive_bonus"}, {"bonus", alive_bonus}};
}

RewardShaping RewardShaping::from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "identity") return identity();
    throw InvalidArgument("unknown shaping mode '" + j.get<std::string>() + "'");
  }
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "identity") return identity();
  if (mode == "drop_alive_bonus") return drop_alive_bonus(j.at("bonus").get<double>());
  throw InvalidArgument("unknown shaping mode '" + mode + "'");
}

}  // namespace linevo::env
