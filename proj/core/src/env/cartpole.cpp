#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "linevo/common/errors.hpp"
#include "linevo/env/classic_control.hpp"

namespace linevo::env {
namespace {

constexpr double kGravity = 9.8;
constexpr double kMassCart = 1.0;
constexpr double kMassPole = 0.1;
constexpr double kTotalMass = kMassPole + kMassCart;
constexpr double kHalfLength = 0.5;
constexpr double kPoleMassLength = kMassPole * kHalfLength;
constexpr double kForceMag = 10.0;
constexpr double kTau = 0.02;
constexpr double kThetaThreshold = 12 * 2 * std::numbers::pi / 360;
constexpr double kXThreshold = 2.4;

}  // namespace

EnvSpec cartpole_spec() {
  return {"CartPole-v1", 4, policy::ActionSpace::discrete(2), 500, 475.0};
}

void CartPole::sample_initial_state(Rng& rng) {
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  s_.x = u(rng);
  s_.x_dot = u(rng);
  s_.theta = u(rng);
  s_.theta_dot = u(rng);
}

void CartPole::set_state_from_observation(const Eigen::VectorXd& obs) {
  s_ = {obs[0], obs[1], obs[2], obs[3]};
}

Environment::Transition CartPole::advance(const policy::Action& action) {
  const auto* a = std::get_if<std::size_t>(&action);
  if (a == nullptr || *a > 1) throw InvalidArgument("CartPole expects a discrete action in {0, 1}");

  const double force = *a == 1 ? kForceMag : -kForceMag;
  const double costheta = std::cos(s_.theta);
  const double sintheta = std::sin(s_.theta);
  const double temp = (force + kPoleMassLength * (s_.theta_dot * s_.theta_dot) * sintheta) / kTotalMass;
  const double thetaacc = (kGravity * sintheta - costheta * temp) /
                          (kHalfLength * (4.0 / 3.0 - kMassPole * (costheta * costheta) / kTotalMass));
  const double xacc = temp - kPoleMassLength * thetaacc * costheta / kTotalMass;

  s_.x = s_.x + kTau * s_.x_dot;
  s_.x_dot = s_.x_dot + kTau * xacc;
  s_.theta = s_.theta + kTau * s_.theta_dot;
  s_.theta_dot = s_.theta_dot + kTau * thetaacc;

  const bool terminated =
      s_.x < -kXThreshold || s_.x > kXThreshold || s_.theta < -kThetaThreshold || s_.theta > kThetaThreshold;
  return {1.0, terminated};
}

Eigen::VectorXd CartPole::observe() const {
  Eigen::VectorXd o(4);
  o << s_.x, s_.x_dot, s_.theta, s_.theta_dot;
  return o;
}

}  // namespace linevo::env
