#include "linevo/es/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "linevo/common/errors.hpp"

namespace linevo::es {

std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::kCsa: return "csa";
    case Variant::kSepCma: return "sep-cma";
    case Variant::kFullCma: return "cma";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  std::string name(text);
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name == "csa" || name == "csa-es") return Variant::kCsa;
  if (name == "sep-cma" || name == "sep-cma-es" || name == "sep") return Variant::kSepCma;
  if (name == "cma" || name == "cma-es" || name == "full-cma") return Variant::kFullCma;
  throw InvalidArgument("unknown ES variant '" + std::string(text) + "'");
}

std::size_t default_lambda(std::size_t n, LambdaRule rule) {
  if (n == 0) throw InvalidArgument("dimension must be >= 1");
  if (rule == LambdaRule::kCma) {
    return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(n))));
  }
  const std::size_t half = (n + 1) / 2;
  return std::min<std::size_t>(128, std::max<std::size_t>(32, half));
}

double expected_norm(std::size_t n) {
  const double d = static_cast<double>(n);
  return std::sqrt(d) * (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d * d));
}

StrategyParams make_params(Variant variant, std::size_t n, std::size_t lambda) {
  if (n == 0) throw InvalidArgument("dimension must be >= 1");
  if (lambda < 2) throw InvalidArgument("lambda must be >= 2");

  StrategyParams p;
  p.variant = variant;
  p.n = n;
  p.lambda = lambda;
  p.mu = lambda / 2;

  p.weights.resize(p.mu);
  const double log_mu = std::log(static_cast<double>(p.mu) + 0.5);
  double total = 0.0;
  for (std::size_t i = 0; i < p.mu; ++i) {
    p.weights[i] = log_mu - std::log(static_cast<double>(i + 1));
    total += p.weights[i];
  }
  double sum_sq = 0.0;
  for (double& w : p.weights) {
    w /= total;
    sum_sq += w * w;
  }
  p.mu_eff = 1.0 / sum_sq;

  const double d = static_cast<double>(n);
  const double mu_eff = p.mu_eff;

  p.c_m = 1.0;
  p.chi_n = expected_norm(n);
  p.c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0);
  p.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0) + p.c_sigma;

  p.c_c = (4.0 + mu_eff / d) / (d + 4.0 + 2.0 * mu_eff / d);
  double c1 = 2.0 / ((d + 1.3) * (d + 1.3) + mu_eff);
  double cmu = std::min(1.0 - c1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((d + 2.0) * (d + 2.0) + mu_eff));
  cmu = std::max(0.0, cmu);

  if (variant == Variant::kSepCma) {
    // Diagonal-only learning is faster; the combined rate is capped at 1 so
    // the decay factor on the old diagonal never goes negative (n = 2, 3).
    const double boost = (d + 2.0) / 3.0;
    c1 = std::min(1.0, c1 * boost);
    cmu = std::min(1.0 - c1, cmu * boost);
  }
  p.c_1 = c1;
  p.c_mu = cmu;

  if (variant == Variant::kFullCma) {
    p.eigen_refresh_interval = 1.0 / (10.0 * d * (c1 + cmu));
  }
  return p;
}

}  // namespace linevo::es
