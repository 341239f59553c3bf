#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "linevo/env/environment.hpp"

namespace linevo::env {

/// Training-time reward transform. Reported returns always use the raw
/// reward; only the fitness the ES ranks by is shaped.
struct RewardShaping {
  enum class Mode { kIdentity, kDropAliveBonus };
  Mode mode = Mode::kIdentity;
  double alive_bonus = 0.0;

  static RewardShaping identity() { return {}; }
  static RewardShaping drop_alive_bonus(double bonus) { return {Mode::kDropAliveBonus, bonus}; }

  nlohmann::json to_json() const;
  static RewardShaping from_json(const nlohmann::json& j);
  bool operator==(const RewardShaping&) const = default;
};

/// identity: reward; drop_alive_bonus(b): reward - b for every step taken.
double shape_reward(const StepResult& step, const RewardShaping& shaping);

}  // namespace linevo::env
