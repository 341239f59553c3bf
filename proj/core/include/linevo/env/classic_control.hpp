#pragma once

#include "linevo/env/environment.hpp"

namespace linevo::env {

/// Cart-pole balancing: explicit Euler, +-10 N push, termination at
/// |x| > 2.4 or |theta| > 12 degrees, +1 per step, 500-step limit.
class CartPole final : public Environment {
 public:
  CartPole() : Environment(cartpole_spec()) {}

  struct State {
    double x = 0, x_dot = 0, theta = 0, theta_dot = 0;
  };
  const State& state() const noexcept { return s_; }

 protected:
  void sample_initial_state(Rng& rng) override;
  void set_state_from_observation(const Eigen::VectorXd& obs) override;
  Transition advance(const policy::Action& action) override;
  Eigen::VectorXd observe() const override;

 private:
  State s_;
};

/// Two-link underactuated swing-up, RK4 with dt = 0.2, torques {-1, 0, 1},
/// -1 per step until the tip clears one link length above the pivot.
class Acrobot final : public Environment {
 public:
  Acrobot() : Environment(acrobot_spec()) {}

  struct State {
    double theta1 = 0, theta2 = 0, dtheta1 = 0, dtheta2 = 0;
  };
  const State& state() const noexcept { return s_; }

 protected:
  void sample_initial_state(Rng& rng) override;
  void set_state_from_observation(const Eigen::VectorXd& obs) override;
  Transition advance(const policy::Action& action) override;
  Eigen::VectorXd observe() const override;

 private:
  State s_;
};

/// Torque-limited pendulum swing-up (|u| <= 2), 200-step limit, reward
/// -(angle^2 + 0.1 omega^2 + 0.001 u^2).
class Pendulum final : public Environment {
 public:
  Pendulum() : Environment(pendulum_spec()) {}

  struct State {
    double theta = 0, theta_dot = 0;
  };
  const State& state() const noexcept { return s_; }
  void set_state(State s) noexcept { s_ = s; }

 protected:
  void sample_initial_state(Rng& rng) override;
  void set_state_from_observation(const Eigen::VectorXd& obs) override;
  Transition advance(const policy::Action& action) override;
  Eigen::VectorXd observe() const override;

 private:
  State s_;
};

/// Maps an angle into [-pi, pi) with floor-mod semantics.
double angle_normalize(double x);

}  // namespace linevo::env
