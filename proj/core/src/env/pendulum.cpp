#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "linevo/common/errors.hpp"
#include "linevo/env/classic_control.hpp"

namespace linevo::env {
namespace {

using std::numbers::pi;

constexpr double kMaxSpeed = 8.0;
constexpr double kMaxTorque = 2.0;
constexpr double kDt = 0.05;
constexpr double kGravity = 10.0;
constexpr double kMass = 1.0;
constexpr double kLength = 1.0;

}  // namespace

double angle_normalize(double x) {
  const double period = 2 * pi;
  double r = std::fmod(x + pi, period);
  if (r < 0.0) r += period;
  return r - pi;
}

EnvSpec pendulum_spec() {
  Eigen::VectorXd lo(1), hi(1);
  lo << -kMaxTorque;
  hi << kMaxTorque;
  return {"Pendulum-v1", 3, policy::ActionSpace::box(lo, hi), 200, -100.0};
}

void Pendulum::sample_initial_state(Rng& rng) {
  std::uniform_real_distribution<double> th(-pi, pi);
  std::uniform_real_distribution<double> thdot(-1.0, 1.0);
  s_.theta = th(rng);
  s_.theta_dot = thdot(rng);
}

void Pendulum::set_state_from_observation(const Eigen::VectorXd& obs) {
  s_.theta = std::atan2(obs[1], obs[0]);
  s_.theta_dot = obs[2];
}

Environment::Transition Pendulum::advance(const policy::Action& action) {
  const auto* a = std::get_if<Eigen::VectorXd>(&action);
  if (a == nullptr || a->size() != 1 || !std::isfinite((*a)[0])) {
    throw InvalidArgument("Pendulum expects a finite 1-d continuous action");
  }
  const double u = std::clamp((*a)[0], -kMaxTorque, kMaxTorque);
  const double th = s_.theta;
  const double thdot = s_.theta_dot;
  const double an = angle_normalize(th);
  const double costs = an * an + 0.1 * thdot * thdot + 0.001 * (u * u);

  double newthdot = thdot + (3 * kGravity / (2 * kLength) * std::sin(th) + 3.0 / (kMass * kLength * kLength) * u) * kDt;
  newthdot = std::clamp(newthdot, -kMaxSpeed, kMaxSpeed);
  s_.theta = th + newthdot * kDt;
  s_.theta_dot = newthdot;
  return {-costs, false};
}

Eigen::VectorXd Pendulum::observe() const {
  Eigen::VectorXd o(3);
  o << std::cos(s_.theta), std::sin(s_.theta), s_.theta_dot;
  return o;
}

}  // namespace linevo::env
