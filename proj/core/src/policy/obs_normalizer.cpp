#include "linevo/policy/obs_normalizer.hpp"

#include <algorithm>
#include <cmath>

#include "linevo/common/errors.hpp"
#include "linevo/es/snapshot.hpp"

namespace linevo::policy {

ObsNormalizer::ObsNormalizer(Eigen::Index dim) : mean_(Eigen::VectorXd::Zero(dim)), m2_(Eigen::VectorXd::Zero(dim)) {}

ObsNormalizer::ObsNormalizer(std::uint64_t count, Eigen::VectorXd mean, Eigen::VectorXd m2)
    : count_(count), mean_(std::move(mean)), m2_(std::move(m2)) {
  if (mean_.size() != m2_.size()) throw InvalidArgument("normalizer mean/m2 length mismatch");
}

Eigen::VectorXd ObsNormalizer::variance() const {
  if (count_ <= 1) return Eigen::VectorXd::Zero(dim());
  return m2_ / static_cast<double>(count_ - 1);
}

void ObsNormalizer::update(const Eigen::VectorXd& obs) {
  if (frozen_) throw ContractViolation("update on a frozen normalizer");
  if (obs.size() != dim()) throw InvalidArgument("observation length does not match normalizer");
  if (!obs.allFinite()) throw InvalidObservation("non-finite observation");
  ++count_;
  const double inv = 1.0 / static_cast<double>(count_);
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const double delta = obs[i] - mean_[i];
    mean_[i] += delta * inv;
    m2_[i] += delta * (obs[i] - mean_[i]);
  }
}

void ObsNormalizer::merge(const ObsNormalizer& other) {
  if (frozen_) throw ContractViolation("merge into a frozen normalizer");
  if (other.count_ == 0) return;
  if (other.dim() != dim()) throw InvalidArgument("normalizer dimension mismatch in merge");
  if (count_ == 0) {
    count_ = other.count_;
    mean_ = other.mean_;
    m2_ = other.m2_;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double total = na + nb;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const double delta = other.mean_[i] - mean_[i];
    mean_[i] += delta * (nb / total);
    m2_[i] += other.m2_[i] + delta * delta * (na * nb / total);
  }
  count_ += other.count_;
}

Eigen::VectorXd ObsNormalizer::normalize(const Eigen::VectorXd& obs) const {
  if (count_ <= 1) return obs;
  const double floor = std::sqrt(kVarianceFloor);
  const double denom_count = static_cast<double>(std::max<std::uint64_t>(count_ - 1, 1));
  Eigen::VectorXd out(obs.size());
  for (Eigen::Index i = 0; i < obs.size(); ++i) {
    const double sd = std::max(std::sqrt(m2_[i] / denom_count), floor);
    out[i] = (obs[i] - mean_[i]) / sd;
  }
  return out;
}

ObsNormalizer ObsNormalizer::frozen_copy() const {
  ObsNormalizer copy = *this;
  copy.freeze();
  return copy;
}

nlohmann::json ObsNormalizer::to_json() const {
  return {{"count", count_}, {"mean", es::vector_to_json(mean_)}, {"m2", es::vector_to_json(m2_)}};
}

ObsNormalizer ObsNormalizer::from_json(const nlohmann::json& j) {
  return ObsNormalizer(j.at("count").get<std::uint64_t>(), es::vector_from_json(j.at("mean")),
                       es::vector_from_json(j.at("m2")));
}

}  // namespace linevo::policy
