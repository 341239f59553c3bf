#include "linevo/policy/linear_policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linevo/common/errors.hpp"

namespace linevo::policy {

LinearPolicy::LinearPolicy(const Eigen::VectorXd& genome, std::size_t obs_dim, ActionSpace space)
    : space_(std::move(space)) {
  if (obs_dim == 0) throw InvalidArgument("obs_dim must be >= 1");
  const std::size_t expected = genome_dim(obs_dim, space_);
  if (static_cast<std::size_t>(genome.size()) != expected) {
    throw InvalidArgument("genome length " + std::to_string(genome.size()) + " does not match " +
                          std::to_string(expected));
  }
  if (!genome.allFinite()) throw InvalidArgument("genome has non-finite entries");
  const auto rows = static_cast<Eigen::Index>(space_.act_dim());
  const auto cols = static_cast<Eigen::Index>(obs_dim);
  weights_ = Eigen::Map<const WeightMatrix>(genome.data(), rows, cols);
}

LinearPolicy LinearPolicy::zeros(std::size_t obs_dim, ActionSpace space) {
  const auto n = static_cast<Eigen::Index>(genome_dim(obs_dim, space));
  return LinearPolicy(Eigen::VectorXd::Zero(n), obs_dim, std::move(space));
}

Eigen::VectorXd LinearPolicy::flatten() const {
  return Eigen::Map<const Eigen::VectorXd>(weights_.data(), weights_.size());
}

Action LinearPolicy::act(const ObsNormalizer& normalizer, const Eigen::VectorXd& obs) const {
  if (obs.size() != weights_.cols()) {
    throw InvalidObservation("observation length " + std::to_string(obs.size()) + ", policy expects " +
                             std::to_string(weights_.cols()));
  }
  if (!obs.allFinite()) throw InvalidObservation("non-finite observation");

  const Eigen::VectorXd s = normalizer.normalize(obs);
  Eigen::VectorXd logits(weights_.rows());
  for (Eigen::Index r = 0; r < weights_.rows(); ++r) {
    double acc = 0.0;
    for (Eigen::Index c = 0; c < weights_.cols(); ++c) acc += weights_(r, c) * s[c];
    logits[r] = acc;
  }

  if (space_.is_discrete()) {
    std::size_t best = 0;
    for (Eigen::Index r = 1; r < logits.size(); ++r) {
      if (logits[r] > logits[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(r);
    }
    return best;
  }
  const Eigen::VectorXd& lo = space_.low();
  const Eigen::VectorXd& hi = space_.high();
  Eigen::VectorXd a(logits.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = std::clamp(lo[i] + (std::tanh(logits[i]) + 1.0) / 2.0 * (hi[i] - lo[i]), lo[i], hi[i]);
  return a;
}

}  // namespace linevo::policy
