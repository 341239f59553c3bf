#include "linevo/policy/action_space.hpp"

#include <string>

#include "linevo/common/errors.hpp"
#include "linevo/es/snapshot.hpp"

namespace linevo::policy {

ActionSpace ActionSpace::discrete(std::size_t k) {
  if (k < 2) throw InvalidArgument("discrete action space needs k >= 2");
  ActionSpace s;
  s.k_ = k;
  return s;
}

ActionSpace ActionSpace::box(Eigen::VectorXd low, Eigen::VectorXd high) {
  if (low.size() == 0 || low.size() != high.size()) throw InvalidArgument("box bounds must be non-empty and equal length");
  if (!low.allFinite() || !high.allFinite()) throw InvalidArgument("box bounds must be finite");
  for (Eigen::Index i = 0; i < low.size(); ++i) {
    if (!(low[i] < high[i])) throw InvalidArgument("box requires low < high elementwise");
  }
  ActionSpace s;
  s.low_ = std::move(low);
  s.high_ = std::move(high);
  return s;
}

std::size_t ActionSpace::act_dim() const noexcept {
  return is_discrete() ? k_ : static_cast<std::size_t>(low_.size());
}

nlohmann::json ActionSpace::to_json() const {
  if (is_discrete()) return {{"kind", "discrete"}, {"n", k_}};
  return {{"kind", "box"}, {"low", es::vector_to_json(low_)}, {"high", es::vector_to_json(high_)}};
}

ActionSpace ActionSpace::from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "discrete") return discrete(j.at("n").get<std::size_t>());
  if (kind == "box") return box(es::vector_from_json(j.at("low")), es::vector_from_json(j.at("high")));
  throw InvalidArgument("unknown action space kind '" + kind + "'");
}

bool ActionSpace::operator==(const ActionSpace& other) const {
  if (k_ != other.k_) return false;
  if (low_.size() != other.low_.size()) return false;
  return low_ == other.low_ && high_ == other.high_;
}

std::size_t genome_dim(std::size_t obs_dim, const ActionSpace& space) {
  return obs_dim * space.act_dim();
}

}  // namespace linevo::policy
