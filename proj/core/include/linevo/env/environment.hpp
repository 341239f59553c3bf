#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "linevo/common/seeding.hpp"
#include "linevo/policy/action_space.hpp"

namespace linevo::env {

struct EnvSpec {
  std::string env_id;
  std::size_t obs_dim = 0;
  policy::ActionSpace action_space = policy::ActionSpace::discrete(2);
  std::size_t max_episode_steps = 0;
  double solved_threshold = 0.0;
};

struct StepResult {
  Eigen::VectorXd obs;
  double reward = 0.0;
  bool terminated = false;  // task-defined terminal state
  bool truncated = false;   // step limit hit
};

/// Episodic environment. The base class owns the step counter and the
/// time limit; concrete tasks implement the dynamics.
class Environment {
 public:
  explicit Environment(EnvSpec spec) : spec_(std::move(spec)) {}
  virtual ~Environment() = default;

  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  const EnvSpec& spec() const noexcept { return spec_; }

  /// Draws an initial state deterministically from `seed`.
  Eigen::VectorXd reset(std::uint64_t seed);

  /// Starts an episode from the state encoded by `obs` (fixture replay).
  Eigen::VectorXd reset_to_observation(const Eigen::VectorXd& obs);

  /// Throws ContractViolation after the episode ended or before reset.
  StepResult step(const policy::Action& action);

  std::size_t elapsed_steps() const noexcept { return steps_; }
  bool episode_active() const noexcept { return active_; }

 protected:
  struct Transition {
    double reward = 0.0;
    bool terminated = false;
  };

  virtual void sample_initial_state(Rng& rng) = 0;
  virtual void set_state_from_observation(const Eigen::VectorXd& obs) = 0;
  virtual Transition advance(const policy::Action& action) = 0;
  virtual Eigen::VectorXd observe() const = 0;

 private:
  EnvSpec spec_;
  std::size_t steps_ = 0;
  bool active_ = false;
};

EnvSpec cartpole_spec();
EnvSpec acrobot_spec();
EnvSpec pendulum_spec();

/// "CartPole-v1", "Acrobot-v1", "Pendulum-v1". Short aliases without the
/// version suffix are accepted. Unknown ids throw InvalidArgument.
std::unique_ptr<Environment> make_env(std::string_view env_id);
EnvSpec env_spec(std::string_view env_id);
std::string canonical_env_id(std::string_view env_id);
std::vector<std::string> supported_envs();

}  // namespace linevo::env
