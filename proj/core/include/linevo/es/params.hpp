#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace linevo::es {

enum class Variant { kCsa, kSepCma, kFullCma };

/// Canonical short names: "csa", "sep-cma", "cma".
std::string_view variant_name(Variant v) noexcept;

/// Accepts the canonical names plus the "-es" suffixed forms and
/// "full-cma". Throws InvalidArgument otherwise.
Variant parse_variant(std::string_view name);

/// Population-size rules. kRl is the neuroevolution default
/// min(128, max(32, ceil(n/2))); kCma is 4 + floor(3 ln n).
enum class LambdaRule { kRl, kCma };

std::size_t default_lambda(std::size_t n, LambdaRule rule);

/// E||N(0, I_n)|| via the usual series approximation.
double expected_norm(std::size_t n);

/// Strategy constants, fixed for the lifetime of a run.
struct StrategyParams {
  Variant variant = Variant::kCsa;
  std::size_t n = 0;
  std::size_t lambda = 0;
  std::size_t mu = 0;
  std::vector<double> weights;  // length mu, sums to 1, non-increasing
  double mu_eff = 0.0;
  double c_m = 1.0;
  double c_sigma = 0.0;
  double d_sigma = 0.0;
  double c_c = 0.0;
  double c_1 = 0.0;   // already scaled for the separable variant; unused by CSA
  double c_mu = 0.0;  // may be 0 when mu_eff == 1
  double chi_n = 0.0;
  // Tells between eigendecompositions (full covariance only).
  double eigen_refresh_interval = 0.0;
};

StrategyParams make_params(Variant variant, std::size_t n, std::size_t lambda);

}  // namespace linevo::es
