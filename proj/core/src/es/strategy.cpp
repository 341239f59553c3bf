#include "linevo/es/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "linevo/common/errors.hpp"
#include "linevo/common/seeding.hpp"

namespace linevo::es {

Strategy new_strategy(Variant variant, std::size_t n, double sigma0, const Eigen::VectorXd& m0,
                      std::optional<std::size_t> lambda, std::uint64_t master_seed, LambdaRule rule) {
  if (n == 0) throw InvalidArgument("dimension must be >= 1");
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw InvalidArgument("sigma0 must be positive and finite");
  if (static_cast<std::size_t>(m0.size()) != n) throw InvalidArgument("m0 length does not match n");
  if (!m0.allFinite()) throw InvalidArgument("m0 must be finite");
  if (lambda && *lambda < 2) throw InvalidArgument("lambda must be >= 2");

  Strategy s;
  s.params = make_params(variant, n, lambda.value_or(default_lambda(n, rule)));
  const auto dim = static_cast<Eigen::Index>(n);
  s.state.mean = m0;
  s.state.sigma = sigma0;
  s.state.cov = Covariance::identity(variant, dim);
  s.state.p_sigma = Eigen::VectorXd::Zero(dim);
  s.state.p_c = Eigen::VectorXd::Zero(dim);
  s.state.generation = 0;
  s.state.master_seed = master_seed;
  return s;
}

Eigen::VectorXd draw_standard_normal(std::uint64_t master_seed, std::uint64_t generation,
                                     std::size_t index, std::size_t n) {
  Rng rng = make_stream({static_cast<std::uint64_t>(StreamTag::kCandidate), master_seed, generation, index});
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = normal(rng);
  return z;
}

Eigen::VectorXd sample_genome(const Eigen::VectorXd& mean, double sigma, const Covariance& cov,
                              const Eigen::VectorXd& z) {
  const Eigen::VectorXd step = cov.transform(z);
  Eigen::VectorXd x(mean.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = mean[j] + sigma * step[j];
  return x;
}

std::vector<Candidate> ask(const StrategyParams& params, const DistributionState& state) {
  std::vector<Candidate> out(params.lambda);
  for (std::size_t i = 0; i < params.lambda; ++i) {
    out[i].index = i;
    out[i].z = draw_standard_normal(state.master_seed, state.generation, i, params.n);
    out[i].x = sample_genome(state.mean, state.sigma, state.cov, out[i].z);
  }
  return out;
}

std::vector<std::size_t> rank_candidates(std::span<const Candidate> candidates, Direction direction) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double fa = *candidates[a].fitness;
    const double fb = *candidates[b].fitness;
    if (fa != fb) return direction == Direction::kMaximize ? fa > fb : fa < fb;
    return candidates[a].index < candidates[b].index;
  });
  return order;
}

DistributionState tell(const StrategyParams& params, const DistributionState& state,
                       std::span<const Candidate> candidates, Direction direction) {
  if (candidates.size() != params.lambda) {
    throw InvalidArgument("tell expects " + std::to_string(params.lambda) + " candidates, got " +
                          std::to_string(candidates.size()));
  }
  for (const auto& c : candidates) {
    if (!c.fitness || !std::isfinite(*c.fitness)) {
      throw InvalidArgument("candidate " + std::to_string(c.index) + " has no finite fitness");
    }
    if (static_cast<std::size_t>(c.z.size()) != params.n) {
      throw InvalidArgument("candidate " + std::to_string(c.index) + " has wrong dimension");
    }
  }

  const auto n = static_cast<Eigen::Index>(params.n);
  const double dn = static_cast<double>(params.n);
  const std::vector<std::size_t> order = rank_candidates(candidates, direction);

  DistributionState next = state;

  // Weighted recombination in z-space and in step space.
  Eigen::VectorXd z_w = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::VectorXd> steps(params.mu);
  for (std::size_t i = 0; i < params.mu; ++i) {
    const Candidate& c = candidates[order[i]];
    steps[i] = state.cov.transform(c.z);
    z_w += params.weights[i] * c.z;
  }
  Eigen::VectorXd y_w = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < params.mu; ++i) y_w += params.weights[i] * steps[i];

  for (Eigen::Index j = 0; j < n; ++j) next.mean[j] = state.mean[j] + params.c_m * state.sigma * y_w[j];

  // Step-size path. C^{-1/2} A z is z for diagonal forms and B z for the full form.
  const double cs = params.c_sigma;
  next.p_sigma = (1.0 - cs) * state.p_sigma + std::sqrt(cs * (2.0 - cs) * params.mu_eff) * state.cov.whiten_step(z_w);
  const double ps_norm = next.p_sigma.norm();

  if (params.variant != Variant::kCsa) {
    const double gen_factor = 1.0 - std::pow(1.0 - cs, 2.0 * static_cast<double>(state.generation + 1));
    const bool h_sigma = ps_norm / std::sqrt(gen_factor) < (1.4 + 2.0 / (dn + 1.0)) * params.chi_n;
    const double cc = params.c_c;
    const double hs = h_sigma ? 1.0 : 0.0;
    next.p_c = (1.0 - cc) * state.p_c + hs * std::sqrt(cc * (2.0 - cc) * params.mu_eff) * y_w;

    const double c1 = params.c_1;
    const double cmu = params.c_mu;
    const double decay = 1.0 - c1 - cmu + (1.0 - hs) * c1 * cc * (2.0 - cc);

    if (params.variant == Variant::kSepCma) {
      for (Eigen::Index j = 0; j < n; ++j) {
        double rank_mu = 0.0;
        for (std::size_t i = 0; i < params.mu; ++i) rank_mu += params.weights[i] * steps[i][j] * steps[i][j];
        next.cov.diag[j] = decay * state.cov.diag[j] + c1 * next.p_c[j] * next.p_c[j] + cmu * rank_mu;
      }
      if (!next.cov.diag.allFinite() || next.cov.diag.minCoeff() <= 0.0) {
        throw NumericalDegeneracy(state.generation, "diagonal covariance lost positivity");
      }
      next.cov.scales = next.cov.diag.cwiseSqrt();
    } else {
      // Upper triangle then mirror: C stays exactly symmetric.
      Eigen::MatrixXd& cm = next.cov.matrix;
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index col = r; col < n; ++col) {
          double rank_mu = 0.0;
          for (std::size_t i = 0; i < params.mu; ++i) rank_mu += params.weights[i] * steps[i][r] * steps[i][col];
          const double v = decay * state.cov.matrix(r, col) + c1 * next.p_c[r] * next.p_c[col] + cmu * rank_mu;
          cm(r, col) = v;
          cm(col, r) = v;
        }
      }
      if (!cm.allFinite()) throw NumericalDegeneracy(state.generation, "covariance has non-finite entries");
      next.cov.stale = state.cov.stale + 1;
      if (static_cast<double>(next.cov.stale) > params.eigen_refresh_interval) {
        next.cov.refresh_eigen(state.generation);
      }
    }
  }

  next.sigma = state.sigma * std::exp((cs / params.d_sigma) * (ps_norm / params.chi_n - 1.0));
  if (!std::isfinite(next.sigma) || !(next.sigma > 0.0)) {
    throw NumericalDegeneracy(state.generation, "step size left (0, inf)");
  }
  if (!next.mean.allFinite()) throw NumericalDegeneracy(state.generation, "mean has non-finite entries");

  next.generation = state.generation + 1;
  return next;
}

GenerationHeader make_generation_header(const DistributionState& state) {
  GenerationHeader h;
  h.master_seed = state.master_seed;
  h.generation = state.generation;
  h.mean = state.mean;
  h.sigma = state.sigma;
  h.cov = state.cov;
  h.cov_digest = state.cov.digest();
  return h;
}

Eigen::VectorXd sample_candidate_from_seed(const GenerationHeader& header, std::size_t index,
                                           const StrategyParams& params) {
  if (index >= params.lambda) {
    throw InvalidArgument("candidate index " + std::to_string(index) + " out of range for lambda " +
                          std::to_string(params.lambda));
  }
  if (static_cast<std::size_t>(header.mean.size()) != params.n || header.cov.n != header.mean.size()) {
    throw InvalidArgument("generation header dimension mismatch");
  }
  if (header.cov.digest() != header.cov_digest) {
    throw DesyncError("covariance digest mismatch at generation " + std::to_string(header.generation));
  }
  const Eigen::VectorXd z = draw_standard_normal(header.master_seed, header.generation, index, params.n);
  return sample_genome(header.mean, header.sigma, header.cov, z);
}

}  // namespace linevo::es
