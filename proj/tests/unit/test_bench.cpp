#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "../support/oracles.hpp"
#include "linevo/bench/config.hpp"
#include "linevo/bench/experiment.hpp"
#include "linevo/bench/plot_data.hpp"
#include "linevo/bench/sanity.hpp"
#include "linevo/bench/summary.hpp"
#include "linevo/eval/curve_csv.hpp"

using namespace linevo;
using namespace linevo::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  std::string tmpl = (fs::temp_directory_path() / ("linevo_" + tag + "_XXXXXX")).string();
  REQUIRE(::mkdtemp(tmpl.data()) != nullptr);
  return tmpl;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

eval::TrainRecord rec(std::uint64_t gen, std::uint64_t t, double median) {
  eval::TrainRecord r;
  r.generation = gen;
  r.cumulative_timesteps = t;
  r.median_test_return = median;
  r.test_returns = {median};
  r.best_train_fitness = median;
  r.sigma = 0.1;
  return r;
}

void write_trial(const fs::path& root, const std::string& variant, int seed, const std::vector<eval::TrainRecord>& h) {
  const fs::path dir = root / "CartPole-v1" / variant / ("seed_" + std::to_string(seed));
  fs::create_directories(dir);
  eval::write_curve_csv(dir / "curve.csv", h, 1);
}

// Carry-forward lookup written against the raw records.
double lookup(const std::vector<eval::TrainRecord>& h, std::uint64_t t) {
  double v = std::nan("");
  for (const auto& r : h) {
    if (r.cumulative_timesteps > t) break;
    v = r.median_test_return;
  }
  return v;
}

}  // namespace

TEST_CASE("environment defaults") {
  const auto c = default_config("CartPole");
  CHECK(c.env_id == "CartPole-v1");
  CHECK(c.sigma0 == 0.1);
  CHECK(c.lambda == std::optional<std::size_t>(4));
  CHECK(c.threshold == 475.0);
  CHECK(c.seeds == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
  CHECK(c.variants.size() == 3);
  CHECK(default_config("Acrobot").sigma0 == 0.05);
  CHECK(default_config("Acrobot").threshold == -100.0);
  CHECK_FALSE(default_config("Pendulum").lambda);
  CHECK_THROWS_AS(env_defaults("MountainCar"), ConfigError);
}

TEST_CASE("config parsing") {
  SUBCASE("default lambda resolves through the RL rule") {
    const auto c = ExperimentConfig::from_json({{"env_id", "Pendulum"}, {"lambda", "default"}});
    CHECK(c.genome_dim() == 3);
    CHECK(c.resolved_lambda() == 32);
    CHECK(c.to_json()["lambda"] == 32);
    CHECK(c.train_config(es::Variant::kCsa, 1).lambda == std::optional<std::size_t>(32));
  }
  SUBCASE("overrides and string seeds") {
    const auto c = ExperimentConfig::from_json(
        {{"env_id", "CartPole-v1"}, {"variant", "SEP-CMA"}, {"sigma0", 0.3}, {"lambda", 10},
         {"seeds", {1, "18446744073709551615"}}, {"budget_timesteps", 1234}});
    REQUIRE(c.variants.size() == 1);
    CHECK(c.variants[0] == es::Variant::kSepCma);
    CHECK(c.sigma0 == 0.3);
    CHECK(c.resolved_lambda() == 10);
    CHECK(c.seeds == std::vector<std::uint64_t>{1, 18446744073709551615ull});
    CHECK(c.budget_timesteps == 1234);
    CHECK_NOTHROW(c.validate());
  }
  SUBCASE("resolved form parses back to itself") {
    auto c = default_config("Acrobot");
    c.output_dir = "somewhere";
    const auto back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"env_id", "Nope"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"sigma0", 1.0}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"env_id", "CartPole"}, {"variant", "bfgs"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"env_id", "CartPole"}, {"lambda", "many"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"env_id", "CartPole"}, {"seeds", {-1}}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"env_id", "CartPole"}, {"sigma0", "big"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(nlohmann::json::array()), ConfigError);
    auto c = default_config("CartPole");
    c.seeds.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = default_config("CartPole");
    c.sigma0 = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = default_config("CartPole");
    c.lambda = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  }
}

TEST_CASE("unwritable output directory") {
  CHECK_THROWS_AS(ensure_writable_dir("/proc/linevo_cannot_exist"), OutputError);
}

TEST_CASE("curve statistics") {
  const std::vector<eval::TrainRecord> h = {rec(0, 100, 10), rec(1, 200, 50), rec(2, 300, 40), rec(3, 400, 60)};
  const auto s = summarize_curve(h, 45);
  CHECK(s.max_median_return == std::optional<double>(60));
  CHECK(s.timesteps_to_threshold == std::optional<std::uint64_t>(200));
  CHECK(s.generations == 4);
  CHECK(s.timesteps == 400);
  CHECK_FALSE(summarize_curve(h, 100).timesteps_to_threshold);
  CHECK(summarize_curve(h, 100).to_json()["timesteps_to_threshold"] == "unreached");
  const auto back = TrialSummary::from_json(s.to_json());
  CHECK(back.max_median_return == s.max_median_return);
  CHECK(back.timesteps_to_threshold == s.timesteps_to_threshold);
}

TEST_CASE("summary matches a recomputation from the curve files") {
  auto c = default_config("CartPole");
  c.variants = {es::Variant::kCsa, es::Variant::kSepCma};
  c.seeds = {0, 1, 2};
  c.budget_timesteps = 4000;
  c.threshold = 60.0;
  c.output_dir = scratch_dir("summary");
  eval::LocalEvaluator evaluator(1);
  const auto out = run_experiment(c, evaluator);

  std::ifstream in(summary_path(c));
  const auto summary = nlohmann::json::parse(in);
  CHECK(summary["artifact_version"] == kArtifactVersion);
  CHECK(summary["mode"] == "local");
  CHECK(summary["resolved_lambda"] == 4);
  REQUIRE(summary["rows"].size() == 2);

  for (std::size_t vi = 0; vi < c.variants.size(); ++vi) {
    std::vector<double> maxima;
    std::optional<std::uint64_t> first;
    std::size_t solved = 0;
    for (auto seed : c.seeds) {
      const fs::path dir = trial_dir(c, c.variants[vi], seed);
      CHECK(fs::exists(dir / "checkpoint.json"));
      CHECK(fs::exists(dir / "trial.json"));
      const auto rows = read_csv(dir / "curve.csv");
      REQUIRE(rows.size() > 1);
      double best = -INFINITY;
      std::optional<std::uint64_t> hit;
      for (std::size_t r = 1; r < rows.size(); ++r) {
        const double m = std::stod(rows[r][2]);
        const auto t = std::stoull(rows[r][1]);
        best = std::max(best, m);
        if (!hit && m >= c.threshold) hit = t;
      }
      maxima.push_back(best);
      if (hit) {
        ++solved;
        first = first ? std::min(*first, *hit) : *hit;
      }
    }
    std::vector<double> sorted = maxima;
    std::sort(sorted.begin(), sorted.end());
    const auto& row = summary["rows"][vi];
    CHECK(row["variant"] == std::string(es::variant_name(c.variants[vi])));
    CHECK(row["max_median_return"].get<double>() == (maxima[0] + maxima[1] + maxima[2]) / 3.0);
    CHECK(row["max_median_return_median"].get<double>() == sorted[1]);
    CHECK(row["solved_trials"] == solved);
    if (first) {
      CHECK(row["timesteps_to_threshold"].get<std::uint64_t>() == *first);
    } else {
      CHECK(row["timesteps_to_threshold"] == "unreached");
    }
  }
  fs::remove_all(c.output_dir);
}

TEST_CASE("plot data aggregates curves on a common grid") {
  const fs::path root = scratch_dir("plot");
  const std::vector<eval::TrainRecord> a = {rec(0, 100, 1.0), rec(1, 250, 4.0), rec(2, 400, 9.0)};
  const std::vector<eval::TrainRecord> b = {rec(0, 150, 2.0), rec(1, 300, 3.5)};
  const std::vector<eval::TrainRecord> d = {rec(0, 120, -1.0), rec(1, 260, 7.25), rec(2, 390, 8.0)};
  const std::vector<eval::TrainRecord> solo = {rec(0, 200, 5.0), rec(1, 350, 6.0)};
  write_trial(root, "csa", 0, a);
  write_trial(root, "csa", 1, b);
  write_trial(root, "csa", 2, d);
  write_trial(root, "cma", 0, solo);

  const auto curves = discover_curves(root);
  REQUIRE(curves.size() == 4);
  CHECK(curves[0].variant == "cma");

  const auto written = write_plot_data(root, root / "plots", 8);
  REQUIRE(written.size() == 1);
  CHECK(written[0].filename() == "CartPole-v1_curves.csv");
  const auto rows = read_csv(written[0]);
  REQUIRE(rows.size() == 9);
  const std::vector<std::string> header = {"timesteps", "cma_median", "cma_mean", "cma_std", "cma_n",
                                           "csa_median",  "csa_mean",  "csa_std",  "csa_n"};
  CHECK(rows[0] == header);
  CHECK(rows.back()[0] == "400");

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto t = std::stoull(rows[r][0]);
    CHECK(t == static_cast<std::uint64_t>(std::llround(400.0 * static_cast<double>(r) / 8.0)));

    std::vector<double> vals;
    for (const auto* h : {&a, &b, &d}) {
      const double v = lookup(*h, t);
      if (!std::isnan(v)) vals.push_back(v);
    }
    CHECK(std::stoul(rows[r][8]) == vals.size());
    if (!vals.empty()) {
      const auto tp = oracle::two_pass(vals);
      std::vector<double> s = vals;
      std::sort(s.begin(), s.end());
      const double med = s.size() % 2 ? s[s.size() / 2] : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);
      const double n = static_cast<double>(vals.size());
      const double pop_std = std::sqrt(tp.variance * (n - 1.0) / n);
      CHECK(oracle::close(std::stod(rows[r][5]), med, 1e-9));
      CHECK(oracle::close(std::stod(rows[r][6]), tp.mean, 1e-9));
      CHECK(oracle::close(std::stod(rows[r][7]), pop_std, 1e-9));
    }

    const double sv = lookup(solo, t);
    if (std::isnan(sv)) {
      CHECK(rows[r][4] == "0");
    } else {
      CHECK(std::stod(rows[r][1]) == sv);
      CHECK(std::stod(rows[r][3]) == 0.0);
      CHECK(rows[r][4] == "1");
    }
  }

  CHECK_THROWS_AS(write_plot_data(root / "plots", root / "out"), ConfigError);
  fs::remove_all(root);
}

TEST_CASE("carry-forward lookup") {
  const std::vector<eval::TrainRecord> h = {rec(0, 100, 1.0), rec(1, 200, 2.0)};
  CHECK(std::isnan(value_at(h, 99)));
  CHECK(value_at(h, 100) == 1.0);
  CHECK(value_at(h, 199) == 1.0);
  CHECK(value_at(h, 10000) == 2.0);
  const auto s = series_stats({std::nan(""), 3.0});
  CHECK(s.count == 1);
  CHECK(s.std == 0.0);
  CHECK(std::isnan(series_stats({}).mean));
}

TEST_CASE("sanity report covers three checks and writes its artifacts") {
  SanityOptions o;
  o.sphere_seeds = 2;
  o.ellipsoid_seeds = 1;
  o.ellipsoid_budget = 2000;
  o.quadratic_seeds = 2;
  const fs::path dir = scratch_dir("sanity");
  const auto report = run_sanity(o, dir);
  REQUIRE(report.checks.size() == 3);
  CHECK(report.to_json()["checks"].size() == 3);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "report.txt"));
  for (const char* v : {"csa", "sep-cma", "cma"}) {
    const auto rows = read_csv(dir / (std::string("trace_quadratic2d_") + v + ".csv"));
    CHECK(rows.size() == o.quadratic_generations + 2);  // header, generations 0..G
  }
  fs::remove_all(dir);
}

TEST_CASE("quadratic trace starts from the configured distribution") {
  SanityOptions o;
  const auto rows = quadratic_trace(es::Variant::kFullCma, o, 3);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0].generation == 0);
  CHECK(rows[0].sigma == o.quadratic_sigma0);
  CHECK(rows[0].mean == Eigen::Vector2d(o.quadratic_offset, o.quadratic_offset));
  CHECK(rows[0].cov.isIdentity());
  CHECK(rows[0].eigenvalues.isOnes());
}
