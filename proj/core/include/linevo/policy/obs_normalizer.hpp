#pragma once

#include <cstdint>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace linevo::policy {

/// Streaming per-channel mean/variance (Welford), used to standardise
/// observations. Rollouts accumulate into a local instance; the trainer
/// folds those into the shared one with merge().
class ObsNormalizer {
 public:
  static constexpr double kVarianceFloor = 1e-8;

  ObsNormalizer() = default;
  explicit ObsNormalizer(Eigen::Index dim);
  ObsNormalizer(std::uint64_t count, Eigen::VectorXd mean, Eigen::VectorXd m2);

  Eigen::Index dim() const noexcept { return mean_.size(); }
  std::uint64_t count() const noexcept { return count_; }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::VectorXd& m2() const noexcept { return m2_; }
  bool frozen() const noexcept { return frozen_; }

  /// Sample variance m2 / (count - 1); zero while count <= 1.
  Eigen::VectorXd variance() const;

  void update(const Eigen::VectorXd& obs);

  /// Pairwise combination of two accumulators (count/mean/m2).
  void merge(const ObsNormalizer& other);

  /// (obs - mean) / max(std, sqrt(floor)); identity while count <= 1.
  Eigen::VectorXd normalize(const Eigen::VectorXd& obs) const;

  void freeze() noexcept { frozen_ = true; }
  ObsNormalizer frozen_copy() const;

  nlohmann::json to_json() const;
  static ObsNormalizer from_json(const nlohmann::json& j);

 private:
  std::uint64_t count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::VectorXd m2_;
  bool frozen_ = false;
};

}  // namespace linevo::policy
