#include "linevo/env/test_functions.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "linevo/common/errors.hpp"
#include "linevo/common/seeding.hpp"

namespace linevo::env {

TestFunction TestFunction::sphere(Eigen::Index n) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  return TestFunction(Kind::kSphere, n, 1.0);
}

TestFunction TestFunction::quadratic2d() {
  TestFunction f(Kind::kQuadratic2d, 2, 10.0);
  const double c = std::sqrt(0.5);
  f.rotation_.resize(2, 2);
  f.rotation_ << c, -c, c, c;
  return f;
}

TestFunction TestFunction::ellipsoid(Eigen::Index n, double cond) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (!(cond >= 1.0)) throw InvalidArgument("condition number must be >= 1");
  return TestFunction(Kind::kEllipsoid, n, cond);
}

TestFunction TestFunction::rotated_ellipsoid(Eigen::Index n, double cond, std::uint64_t seed) {
  TestFunction f = ellipsoid(n, cond);
  f.kind_ = Kind::kRotatedEllipsoid;
  Rng rng = make_stream({static_cast<std::uint64_t>(StreamTag::kTestFunction), seed, static_cast<std::uint64_t>(n)});
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix column signs so the factorisation is unique.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c) {
    if (r(c, c) < 0) q.col(c) *= -1.0;
  }
  f.rotation_ = q;
  return f;
}

TestFunction TestFunction::rastrigin(Eigen::Index n) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  return TestFunction(Kind::kRastrigin, n, 1.0);
}

std::string TestFunction::name() const {
  switch (kind_) {
    case Kind::kSphere: return "sphere";
    case Kind::kQuadratic2d: return "quadratic2d";
    case Kind::kEllipsoid: return "ellipsoid";
    case Kind::kRotatedEllipsoid: return "rotated_ellipsoid";
    case Kind::kRastrigin: return "rastrigin";
  }
  return "?";
}

double TestFunction::ellipsoid_value(const Eigen::VectorXd& y) const {
  if (n_ == 1) return y[0] * y[0];
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n_; ++i) {
    const double w = std::pow(cond_, static_cast<double>(i) / static_cast<double>(n_ - 1));
    acc += w * y[i] * y[i];
  }
  return acc;
}

double TestFunction::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != n_) {
    throw InvalidArgument(name() + ": expected dimension " + std::to_string(n_) + ", got " + std::to_string(x.size()));
  }
  switch (kind_) {
    case Kind::kSphere:
      return x.squaredNorm();
    case Kind::kEllipsoid:
      return ellipsoid_value(x);
    case Kind::kQuadratic2d:
    case Kind::kRotatedEllipsoid:
      return ellipsoid_value(rotation_ * x);
    case Kind::kRastrigin: {
      double acc = 10.0 * static_cast<double>(n_);
      for (Eigen::Index i = 0; i < n_; ++i) acc += x[i] * x[i] - 10.0 * std::cos(2.0 * std::numbers::pi * x[i]);
      return acc;
    }
  }
  return 0.0;
}

}  // namespace linevo::env
