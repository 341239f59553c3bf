#pragma once
// Independent reference computations used by the unit and acceptance tests.
// Deliberately written without calling into the library's own helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Log-rank weights for the mu best of lambda, normalised to sum 1.
inline std::vector<double> log_rank_weights(std::size_t lambda) {
  const std::size_t mu = lambda / 2;
  std::vector<double> w(mu);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu; ++i) {
    w[i] = std::log(static_cast<double>(mu) + 0.5) - std::log(static_cast<double>(i + 1));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

/// Indices sorted best first; higher fitness is better, ties to lower index.
inline std::vector<std::size_t> ranking(const std::vector<double>& fitness) {
  std::vector<std::size_t> idx(fitness.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (fitness[a] != fitness[b]) return fitness[a] > fitness[b];
    return a < b;
  });
  return idx;
}

/// m + sum_i w_i (x_{i:lambda} - m), with c_m = 1.
inline Eigen::VectorXd recombined_mean(const Eigen::VectorXd& m, const std::vector<Eigen::VectorXd>& xs,
                                       const std::vector<double>& fitness) {
  const auto w = log_rank_weights(xs.size());
  const auto order = ranking(fitness);
  Eigen::VectorXd step = Eigen::VectorXd::Zero(m.size());
  for (std::size_t i = 0; i < w.size(); ++i) step += w[i] * (xs[order[i]] - m);
  return m + step;
}

struct TwoPass {
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n - 1)
};

inline TwoPass two_pass(const std::vector<double>& xs) {
  TwoPass r;
  if (xs.empty()) return r;
  double s = 0.0;
  for (double x : xs) s += x;
  r.mean = s / static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.variance = ss / static_cast<double>(xs.size() - 1);
  return r;
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

struct FixtureRow {
  std::size_t step = 0;
  double action = 0.0;
  Eigen::VectorXd obs;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
};

/// step,action,obs0..obsK,reward,terminated,truncated
inline std::vector<FixtureRow> read_fixture(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  const auto cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  const std::size_t obs_dim = cols - 5;
  std::vector<FixtureRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    FixtureRow r;
    r.step = std::stoul(cells[0]);
    r.action = std::stod(cells[1]);
    r.obs.resize(static_cast<Eigen::Index>(obs_dim));
    for (std::size_t k = 0; k < obs_dim; ++k) r.obs(static_cast<Eigen::Index>(k)) = std::stod(cells[2 + k]);
    r.reward = std::stod(cells[2 + obs_dim]);
    r.terminated = cells[3 + obs_dim] == "1";
    r.truncated = cells[4 + obs_dim] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace oracle
