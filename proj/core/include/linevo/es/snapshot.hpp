#pragma once

#include <nlohmann/json.hpp>

#include "linevo/es/strategy.hpp"

namespace linevo::es {

/// Covariance payload: {"kind": "unit"} | {"kind": "diag", "values": [...]}
/// | {"kind": "full", "matrix": [row-major], "basis": [row-major],
/// "scales": [...], "stale": k}. Basis and scales ride along so a restored
/// full covariance samples exactly like the original.
nlohmann::json covariance_to_json(const Covariance& cov);
Covariance covariance_from_json(const nlohmann::json& j, Variant kind, Eigen::Index n);

/// State snapshot {variant, n, lambda, mu, g, m, sigma, cov, p_sigma, p_c,
/// master_seed}. The seed is a decimal string.
nlohmann::json snapshot_to_json(const Strategy& strategy);
Strategy snapshot_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const nlohmann::json& j);

}  // namespace linevo::es
