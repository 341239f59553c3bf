#include "linevo/es/covariance.hpp"

#include <cmath>

#include "linevo/common/errors.hpp"

namespace linevo::es {

Covariance Covariance::identity(Variant kind, Eigen::Index n) {
  Covariance c;
  c.kind = kind;
  c.n = n;
  switch (kind) {
    case Variant::kCsa:
      break;
    case Variant::kSepCma:
      c.diag = Eigen::VectorXd::Ones(n);
      c.scales = Eigen::VectorXd::Ones(n);
      break;
    case Variant::kFullCma:
      c.matrix = Eigen::MatrixXd::Identity(n, n);
      c.basis = Eigen::MatrixXd::Identity(n, n);
      c.scales = Eigen::VectorXd::Ones(n);
      break;
  }
  return c;
}

Eigen::VectorXd Covariance::transform(const Eigen::VectorXd& z) const {
  switch (kind) {
    case Variant::kCsa:
      return z;
    case Variant::kSepCma: {
      Eigen::VectorXd out(n);
      for (Eigen::Index j = 0; j < n; ++j) out[j] = scales[j] * z[j];
      return out;
    }
    case Variant::kFullCma: {
      Eigen::VectorXd scaled(n);
      for (Eigen::Index k = 0; k < n; ++k) scaled[k] = scales[k] * z[k];
      Eigen::VectorXd out(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) acc += basis(j, k) * scaled[k];
        out[j] = acc;
      }
      return out;
    }
  }
  return z;
}

Eigen::VectorXd Covariance::whiten_step(const Eigen::VectorXd& z) const {
  if (kind != Variant::kFullCma) return z;
  Eigen::VectorXd out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) acc += basis(j, k) * z[k];
    out[j] = acc;
  }
  return out;
}

Eigen::MatrixXd Covariance::dense() const {
  switch (kind) {
    case Variant::kCsa: return Eigen::MatrixXd::Identity(n, n);
    case Variant::kSepCma: return diag.asDiagonal();
    case Variant::kFullCma: return matrix;
  }
  return {};
}

void Covariance::refresh_eigen(std::uint64_t generation) {
  if (kind != Variant::kFullCma) return;
  if (!matrix.allFinite()) throw NumericalDegeneracy(generation, "covariance has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalDegeneracy(generation, "eigendecomposition of the covariance failed");
  }
  const Eigen::VectorXd& eig = solver.eigenvalues();
  if (!eig.allFinite() || eig.minCoeff() <= 0.0) {
    throw NumericalDegeneracy(generation, "covariance lost positive definiteness (min eigenvalue " +
                                              std::to_string(eig.minCoeff()) + ")");
  }
  basis = solver.eigenvectors();
  scales = eig.cwiseSqrt();
  stale = 0;
}

std::uint64_t Covariance::digest() const {
  Fnv1a64 h;
  h.update_u64(static_cast<std::uint64_t>(kind));
  h.update_u64(static_cast<std::uint64_t>(n));
  auto fold = [&h](const auto& m) { h.update(m.data(), static_cast<std::size_t>(m.size()) * sizeof(double)); };
  switch (kind) {
    case Variant::kCsa:
      break;
    case Variant::kSepCma:
      fold(diag);
      fold(scales);
      break;
    case Variant::kFullCma:
      // Eigen storage is column-major; digest the row-major view to match
      // the wire payload order.
      {
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> c = matrix;
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> b = basis;
        fold(c);
        fold(b);
      }
      fold(scales);
      break;
  }
  return h.digest();
}

}  // namespace linevo::es
