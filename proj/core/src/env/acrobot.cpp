#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "linevo/common/errors.hpp"
#include "linevo/env/classic_control.hpp"

namespace linevo::env {
namespace {

using std::numbers::pi;

constexpr double kDt = 0.2;
constexpr double kLinkLength1 = 1.0;
constexpr double kLinkMass1 = 1.0;
constexpr double kLinkMass2 = 1.0;
constexpr double kLinkCom1 = 0.5;
constexpr double kLinkCom2 = 0.5;
constexpr double kLinkMoi = 1.0;
constexpr double kMaxVel1 = 4 * pi;
constexpr double kMaxVel2 = 9 * pi;
constexpr double kGravity = 9.8;
constexpr std::array<double, 3> kTorques = {-1.0, 0.0, 1.0};

using Vec4 = std::array<double, 4>;

// Equations of motion (book variant).
Vec4 derivs(const Vec4& s, double a) {
  const double m1 = kLinkMass1, m2 = kLinkMass2, l1 = kLinkLength1;
  const double lc1 = kLinkCom1, lc2 = kLinkCom2, i1 = kLinkMoi, i2 = kLinkMoi;
  const double theta1 = s[0], theta2 = s[1], dtheta1 = s[2], dtheta2 = s[3];

  const double d1 = m1 * lc1 * lc1 + m2 * (l1 * l1 + lc2 * lc2 + 2 * l1 * lc2 * std::cos(theta2)) + i1 + i2;
  const double d2 = m2 * (lc2 * lc2 + l1 * lc2 * std::cos(theta2)) + i2;
  const double phi2 = m2 * lc2 * kGravity * std::cos(theta1 + theta2 - pi / 2.0);
  const double phi1 = -m2 * l1 * lc2 * dtheta2 * dtheta2 * std::sin(theta2) -
                      2 * m2 * l1 * lc2 * dtheta2 * dtheta1 * std::sin(theta2) +
                      (m1 * lc1 + m2 * l1) * kGravity * std::cos(theta1 - pi / 2) + phi2;
  const double ddtheta2 = (a + d2 / d1 * phi1 - m2 * l1 * lc2 * dtheta1 * dtheta1 * std::sin(theta2) - phi2) /
                          (m2 * lc2 * lc2 + i2 - d2 * d2 / d1);
  const double ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;
  return {dtheta1, dtheta2, ddtheta1, ddtheta2};
}

Vec4 axpy(const Vec4& y, double h, const Vec4& k) {
  return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

Vec4 rk4_step(const Vec4& y0, double a, double dt) {
  const double dt2 = dt / 2.0;
  const Vec4 k1 = derivs(y0, a);
  const Vec4 k2 = derivs(axpy(y0, dt2, k1), a);
  const Vec4 k3 = derivs(axpy(y0, dt2, k2), a);
  const Vec4 k4 = derivs(axpy(y0, dt, k3), a);
  Vec4 out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = y0[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

double wrap(double x, double lo, double hi) {
  const double diff = hi - lo;
  while (x > hi) x -= diff;
  while (x < lo) x += diff;
  return x;
}

}  // namespace

EnvSpec acrobot_spec() {
  return {"Acrobot-v1", 6, policy::ActionSpace::discrete(3), 500, -100.0};
}

void Acrobot::sample_initial_state(Rng& rng) {
  // Initial state is single precision in the reference implementation.
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  s_.theta1 = static_cast<float>(u(rng));
  s_.theta2 = static_cast<float>(u(rng));
  s_.dtheta1 = static_cast<float>(u(rng));
  s_.dtheta2 = static_cast<float>(u(rng));
}

void Acrobot::set_state_from_observation(const Eigen::VectorXd& obs) {
  s_.theta1 = std::atan2(obs[1], obs[0]);
  s_.theta2 = std::atan2(obs[3], obs[2]);
  s_.dtheta1 = obs[4];
  s_.dtheta2 = obs[5];
}

Environment::Transition Acrobot::advance(const policy::Action& action) {
  const auto* a = std::get_if<std::size_t>(&action);
  if (a == nullptr || *a >= kTorques.size()) throw InvalidArgument("Acrobot expects a discrete action in {0, 1, 2}");

  Vec4 ns = rk4_step({s_.theta1, s_.theta2, s_.dtheta1, s_.dtheta2}, kTorques[*a], kDt);
  s_.theta1 = wrap(ns[0], -pi, pi);
  s_.theta2 = wrap(ns[1], -pi, pi);
  s_.dtheta1 = std::clamp(ns[2], -kMaxVel1, kMaxVel1);
  s_.dtheta2 = std::clamp(ns[3], -kMaxVel2, kMaxVel2);

  const bool terminated = -std::cos(s_.theta1) - std::cos(s_.theta2 + s_.theta1) > 1.0;
  return {terminated ? 0.0 : -1.0, terminated};
}

Eigen::VectorXd Acrobot::observe() const {
  Eigen::VectorXd o(6);
  o << std::cos(s_.theta1), std::sin(s_.theta1), std::cos(s_.theta2), std::sin(s_.theta2), s_.dtheta1, s_.dtheta2;
  return o;
}

}  // namespace linevo::env
