#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "linevo/common/numfmt.hpp"
#include "linevo/es/params.hpp"

namespace linevo::es {

/// Covariance representation of the search distribution.
///
/// - kCsa: implicitly the identity; no storage.
/// - kSepCma: `diag` holds the variances, `scales` their square roots.
/// - kFullCma: `matrix` holds C; `basis` and `scales` hold the cached
///   factorisation C = B diag(scales)^2 B^T used for sampling. The cache may
///   lag C by up to the refresh interval; `stale` counts tells since the
///   last refresh.
struct Covariance {
  Variant kind = Variant::kCsa;
  Eigen::Index n = 0;
  Eigen::VectorXd diag;
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd basis;
  Eigen::VectorXd scales;
  std::uint64_t stale = 0;

  static Covariance identity(Variant kind, Eigen::Index n);

  /// A z with A the sampling transform (I, diag(scales), or B diag(scales)).
  /// Evaluated with a fixed loop order so every process gets identical bits.
  Eigen::VectorXd transform(const Eigen::VectorXd& z) const;

  /// The isotropic direction used by the step-size path: z for CSA and
  /// the separable variant, B z for the full variant.
  Eigen::VectorXd whiten_step(const Eigen::VectorXd& z) const;

  /// Dense C, regardless of representation.
  Eigen::MatrixXd dense() const;

  /// Recomputes basis/scales from `matrix`. Throws NumericalDegeneracy if C
  /// is not finite or not positive definite.
  void refresh_eigen(std::uint64_t generation);

  /// 64-bit digest of every field sampling depends on.
  std::uint64_t digest() const;
};

}  // namespace linevo::es
