#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linevo/es/optimize.hpp"

namespace linevo::bench {

struct SanityOptions {
  // sphere, n = 10, FULL_CMA
  std::size_t sphere_seeds = 10;
  std::uint64_t sphere_budget = 5000;
  double sphere_target = 1e-8;
  // rotated ellipsoid, cond 1e6, n = 10, all variants
  std::size_t ellipsoid_seeds = 15;
  std::uint64_t ellipsoid_budget = 60000;
  double ellipsoid_target = 1e-6;
  // quadratic2d sigma trace
  std::size_t quadratic_seeds = 10;
  std::size_t quadratic_generations = 10;
  double quadratic_sigma0 = 10.0;
  double quadratic_offset = 10.0;  // m0 = (offset, offset)
};

struct SanityCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json stats;
};

/// One row per generation of a run: m, sigma, C and its eigenvalues.
struct TraceRow {
  std::uint64_t generation = 0;
  double sigma = 0.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Eigen::VectorXd eigenvalues;
};

struct SanityReport {
  std::vector<SanityCheck> checks;
  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Evaluations until the target was met, or nullopt.
std::optional<std::uint64_t> evals_to_target(const es::OptimizeResult& r);

SanityCheck check_sphere(const SanityOptions& o);
SanityCheck check_rotated_ellipsoid(const SanityOptions& o);
SanityCheck check_quadratic_sigma(const SanityOptions& o);

/// Distribution trace of one quadratic2d run.
std::vector<TraceRow> quadratic_trace(es::Variant variant, const SanityOptions& o, std::uint64_t seed);
std::string format_trace_csv(const std::vector<TraceRow>& rows);

/// Runs the three checks; when `out_dir` is non-empty writes report.json,
/// report.txt and trace_quadratic2d_<variant>.csv there.
SanityReport run_sanity(const SanityOptions& o, const std::filesystem::path& out_dir);

}  // namespace linevo::bench
