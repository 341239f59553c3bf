#include "linevo/env/environment.hpp"

#include "linevo/common/errors.hpp"
#include "linevo/env/classic_control.hpp"

namespace linevo::env {

Eigen::VectorXd Environment::reset(std::uint64_t seed) {
  Rng rng = make_stream({static_cast<std::uint64_t>(StreamTag::kEnvReset), seed});
  sample_initial_state(rng);
  steps_ = 0;
  active_ = true;
  return observe();
}

Eigen::VectorXd Environment::reset_to_observation(const Eigen::VectorXd& obs) {
  if (static_cast<std::size_t>(obs.size()) != spec_.obs_dim) {
    throw InvalidArgument("observation length does not match " + spec_.env_id);
  }
  set_state_from_observation(obs);
  steps_ = 0;
  active_ = true;
  return observe();
}

StepResult Environment::step(const policy::Action& action) {
  if (!active_) throw ContractViolation(spec_.env_id + ": step() without an active episode");
  const Transition t = advance(action);
  ++steps_;
  StepResult r;
  r.obs = observe();
  r.reward = t.reward;
  r.terminated = t.terminated;
  r.truncated = steps_ >= spec_.max_episode_steps;
  if (r.terminated || r.truncated) active_ = false;
  return r;
}

namespace {

std::string strip_version(std::string_view id) {
  std::string s(id);
  if (s.size() > 3 && s.ends_with("-v1")) s.resize(s.size() - 3);
  return s;
}

}  // namespace

std::string canonical_env_id(std::string_view env_id) {
  const std::string base = strip_version(env_id);
  if (base == "CartPole") return "CartPole-v1";
  if (base == "Acrobot") return "Acrobot-v1";
  if (base == "Pendulum") return "Pendulum-v1";
  throw InvalidArgument("unknown environment '" + std::string(env_id) + "'");
}

EnvSpec env_spec(std::string_view env_id) {
  const std::string id = canonical_env_id(env_id);
  if (id == "CartPole-v1") return cartpole_spec();
  if (id == "Acrobot-v1") return acrobot_spec();
  return pendulum_spec();
}

std::unique_ptr<Environment> make_env(std::string_view env_id) {
  const std::string id = canonical_env_id(env_id);
  if (id == "CartPole-v1") return std::make_unique<CartPole>();
  if (id == "Acrobot-v1") return std::make_unique<Acrobot>();
  return std::make_unique<Pendulum>();
}

std::vector<std::string> supported_envs() { return {"CartPole-v1", "Acrobot-v1", "Pendulum-v1"}; }

}  // namespace linevo::env
