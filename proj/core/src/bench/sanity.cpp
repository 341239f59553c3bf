#include "linevo/bench/sanity.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "linevo/bench/config.hpp"
#include "linevo/bench/summary.hpp"
#include "linevo/common/numfmt.hpp"
#include "linevo/env/test_functions.hpp"

namespace linevo::bench {

namespace {

constexpr es::Variant kAll[] = {es::Variant::kCsa, es::Variant::kSepCma, es::Variant::kFullCma};
constexpr double kInf = std::numeric_limits<double>::infinity();

double median_evals(const std::vector<std::optional<std::uint64_t>>& evals) {
  std::vector<double> v;
  for (const auto& e : evals) v.push_back(e ? static_cast<double>(*e) : kInf);
  return median_of(v);
}

nlohmann::json evals_json(const std::vector<std::optional<std::uint64_t>>& evals) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : evals) j.push_back(e ? nlohmann::json(*e) : nlohmann::json(nullptr));
  return j;
}

std::string fmt(double v) { return format_real(v); }

}  // namespace

std::optional<std::uint64_t> evals_to_target(const es::OptimizeResult& r) {
  if (r.target_reached) return r.evaluations;
  return std::nullopt;
}

SanityCheck check_sphere(const SanityOptions& o) {
  const auto f = env::TestFunction::sphere(10);
  std::vector<std::optional<std::uint64_t>> evals;
  for (std::size_t s = 0; s < o.sphere_seeds; ++s) {
    es::OptimizeOptions opt;
    opt.variant = es::Variant::kFullCma;
    opt.sigma0 = 1.0;
    opt.m0 = Eigen::VectorXd::Ones(10);
    opt.budget_evals = o.sphere_budget;
    opt.target = o.sphere_target;
    opt.seed = s;
    evals.push_back(evals_to_target(es::optimize(f, opt)));
  }
  SanityCheck c;
  c.name = "sphere_full_cma";
  const double med = median_evals(evals);
  c.passed = med <= static_cast<double>(o.sphere_budget);
  c.detail = "median evaluations to f<" + fmt(o.sphere_target) + ": " + fmt(med) + " (budget " +
             std::to_string(o.sphere_budget) + ")";
  c.stats = {{"evaluations", evals_json(evals)}, {"median", med}};
  return c;
}

SanityCheck check_rotated_ellipsoid(const SanityOptions& o) {
  nlohmann::json stats;
  double med[3] = {0, 0, 0};
  for (int k = 0; k < 3; ++k) {
    std::vector<std::optional<std::uint64_t>> evals;
    for (std::size_t s = 0; s < o.ellipsoid_seeds; ++s) {
      const auto f = env::TestFunction::rotated_ellipsoid(10, 1e6, 1000 + s);
      es::OptimizeOptions opt;
      opt.variant = kAll[k];
      opt.sigma0 = 1.0;
      opt.m0 = Eigen::VectorXd::Ones(10);
      opt.budget_evals = o.ellipsoid_budget;
      opt.target = o.ellipsoid_target;
      opt.seed = s;
      evals.push_back(evals_to_target(es::optimize(f, opt)));
    }
    med[k] = median_evals(evals);
    stats[std::string(es::variant_name(kAll[k]))] = {{"evaluations", evals_json(evals)}, {"median", med[k]}};
  }
  SanityCheck c;
  c.name = "rotated_ellipsoid_ordering";
  c.passed = med[2] < med[1] && med[2] < med[0];
  c.detail = "median evaluations to f<=" + fmt(o.ellipsoid_target) + ": csa " + fmt(med[0]) + ", sep-cma " +
             fmt(med[1]) + ", cma " + fmt(med[2]);
  c.stats = stats;
  return c;
}

std::vector<TraceRow> quadratic_trace(es::Variant variant, const SanityOptions& o, std::uint64_t seed) {
  const auto f = env::TestFunction::quadratic2d();
  std::vector<TraceRow> rows;
  es::OptimizeOptions opt;
  opt.variant = variant;
  opt.sigma0 = o.quadratic_sigma0;
  opt.m0 = Eigen::VectorXd::Constant(2, o.quadratic_offset);
  opt.seed = seed;
  const std::size_t lambda = es::default_lambda(2, es::LambdaRule::kCma);
  opt.budget_evals = lambda * o.quadratic_generations;
  opt.on_generation = [&](const es::Strategy& s) {
    TraceRow r;
    r.generation = s.state.generation;
    r.sigma = s.state.sigma;
    r.mean = s.state.mean;
    r.cov = s.state.cov.dense();
    r.eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(r.cov, Eigen::EigenvaluesOnly).eigenvalues();
    rows.push_back(std::move(r));
  };
  const es::OptimizeResult res = es::optimize(f, opt);
  const auto& s = res.final_strategy.state;
  TraceRow last;
  last.generation = s.generation;
  last.sigma = s.sigma;
  last.mean = s.mean;
  last.cov = s.cov.dense();
  last.eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(last.cov, Eigen::EigenvaluesOnly).eigenvalues();
  rows.push_back(std::move(last));
  return rows;
}

std::string format_trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream out;
  out << "generation,sigma,m_1,m_2,c_11,c_12,c_22,eig_min,eig_max\n";
  for (const auto& r : rows) {
    out << r.generation << ',' << fmt(r.sigma) << ',' << fmt(r.mean(0)) << ',' << fmt(r.mean(1)) << ','
        << fmt(r.cov(0, 0)) << ',' << fmt(r.cov(0, 1)) << ',' << fmt(r.cov(1, 1)) << ',' << fmt(r.eigenvalues(0))
        << ',' << fmt(r.eigenvalues(1)) << '\n';
  }
  return out.str();
}

SanityCheck check_quadratic_sigma(const SanityOptions& o) {
  SanityCheck c;
  c.name = "quadratic2d_sigma_decrease";
  c.passed = true;
  std::ostringstream detail;
  for (auto v : kAll) {
    std::vector<double> finals;
    std::size_t decreased = 0;
    for (std::size_t s = 0; s < o.quadratic_seeds; ++s) {
      const auto rows = quadratic_trace(v, o, s);
      finals.push_back(rows.back().sigma);
      if (rows.back().sigma < rows.front().sigma) ++decreased;
    }
    const double med = median_of(finals);
    const bool ok = med < o.quadratic_sigma0;
    c.passed = c.passed && ok;
    detail << std::string(es::variant_name(v)) << ": median sigma after " << o.quadratic_generations << " generations "
           << fmt(med) << " (" << decreased << "/" << o.quadratic_seeds << " decreased); ";
    c.stats[std::string(es::variant_name(v))] = {{"final_sigma", finals}, {"median", med}, {"decreased", decreased}};
  }
  c.detail = detail.str();
  return c;
}

bool SanityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SanityCheck& c) { return c.passed; });
}

nlohmann::json SanityReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"stats", c.stats}});
  }
  return {{"artifact_version", kArtifactVersion}, {"passed", passed()}, {"checks", cs}};
}

std::string SanityReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  return out.str();
}

SanityReport run_sanity(const SanityOptions& o, const std::filesystem::path& out_dir) {
  SanityReport report;
  report.checks.push_back(check_sphere(o));
  report.checks.push_back(check_rotated_ellipsoid(o));
  report.checks.push_back(check_quadratic_sigma(o));
  if (!out_dir.empty()) {
    ensure_writable_dir(out_dir);
    std::ofstream(out_dir / "report.json") << report.to_json().dump(2) << '\n';
    std::ofstream(out_dir / "report.txt") << report.to_text();
    for (auto v : kAll) {
      std::ofstream(out_dir / ("trace_quadratic2d_" + std::string(es::variant_name(v)) + ".csv"))
          << format_trace_csv(quadratic_trace(v, o, 0));
    }
  }
  return report;
}

}  // namespace linevo::bench
