// linevo: train linear policies with evolution strategies.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "linevo/bench/config.hpp"
#include "linevo/bench/experiment.hpp"
#include "linevo/bench/plot_data.hpp"
#include "linevo/bench/sanity.hpp"
#include "linevo/common/errors.hpp"
#include "linevo/common/numfmt.hpp"
#include "linevo/dist/master.hpp"
#include "linevo/dist/worker.hpp"
#include "linevo/eval/rollout.hpp"
#include "linevo/policy/checkpoint.hpp"

namespace {

using namespace linevo;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOutput = 3;
constexpr int kExitNetwork = 4;

struct TrainFlags {
  std::string config_path;
  std::string env_id;
  std::vector<std::string> variants;
  std::optional<double> sigma0;
  std::string lambda;
  std::optional<std::uint64_t> budget;
  std::vector<std::uint64_t> seeds;
  bool seeds_given = false;
  std::optional<std::size_t> parallelism;
  std::string output_dir;
  std::optional<double> threshold;
  bool quiet = false;
};

void add_train_flags(CLI::App* cmd, TrainFlags& f) {
  cmd->add_option("-c,--config", f.config_path, "experiment JSON file");
  cmd->add_option("--env", f.env_id, "environment id (CartPole, Acrobot, Pendulum)");
  cmd->add_option("--variant", f.variants, "csa, sep-cma or cma (repeatable)");
  cmd->add_option("--sigma0", f.sigma0, "initial step size");
  cmd->add_option("--lambda", f.lambda, "population size or 'default'");
  cmd->add_option("--budget", f.budget, "training timesteps per trial");
  cmd->add_option("--seeds", f.seeds, "trial seeds")->delimiter(',');
  cmd->add_option("--parallelism", f.parallelism, "evaluation threads");
  cmd->add_option("-o,--output-dir", f.output_dir, "output directory (default $LINEVO_OUTPUT_DIR or ./runs)");
  cmd->add_option("--threshold", f.threshold, "solved threshold override");
  cmd->add_flag("-q,--quiet", f.quiet, "only print the summary");
}

/// Config file first, then flags on top.
bench::ExperimentConfig resolve_config(const TrainFlags& f, bool seeds_given) {
  nlohmann::json j = nlohmann::json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw bench::ConfigError("cannot read config " + f.config_path);
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw bench::ConfigError("config " + f.config_path + ": " + e.what());
    }
  }
  if (!f.env_id.empty()) j["env_id"] = f.env_id;
  if (!j.contains("env_id")) throw bench::ConfigError("no environment given (use --env or a config file)");
  if (!f.variants.empty()) {
    j.erase("variant");
    j["variants"] = f.variants;
  }
  if (f.sigma0) j["sigma0"] = *f.sigma0;
  if (!f.lambda.empty()) {
    if (f.lambda == "default") {
      j["lambda"] = "default";
    } else {
      try {
        j["lambda"] = std::stoll(f.lambda);
      } catch (const std::exception&) {
        throw bench::ConfigError("--lambda must be an integer or 'default'");
      }
    }
  }
  if (f.budget) j["budget_timesteps"] = *f.budget;
  if (seeds_given) {
    nlohmann::json s = nlohmann::json::array();
    for (auto v : f.seeds) s.push_back(std::to_string(v));
    j["seeds"] = s;
  }
  if (f.parallelism) j["parallelism"] = *f.parallelism;
  if (!f.output_dir.empty()) j["output_dir"] = f.output_dir;
  if (f.threshold) j["threshold"] = *f.threshold;
  bench::ExperimentConfig c = bench::ExperimentConfig::from_json(j);
  c.validate();
  return c;
}

void print_trial(const bench::TrialOutcome& t) {
  const auto& s = t.summary;
  std::cout << es::variant_name(t.variant) << " seed " << t.seed << ": "
            << (s.max_median_return ? format_real(*s.max_median_return) : std::string("n/a")) << " best median, "
            << (s.timesteps_to_threshold ? std::to_string(*s.timesteps_to_threshold) : std::string("unreached"))
            << " to threshold" << (s.status == "failed" ? " [failed: " + s.failure + "]" : std::string()) << '\n';
}

void print_rows(const std::vector<bench::SummaryRow>& rows) {
  for (const auto& r : rows) {
    std::cout << r.env_id << ' ' << r.variant << ": max median return (mean over seeds) "
              << (r.max_median_return ? format_real(*r.max_median_return) : std::string("n/a"))
              << ", timesteps to threshold (min over seeds) "
              << (r.timesteps_to_threshold ? std::to_string(*r.timesteps_to_threshold) : std::string("unreached"))
              << '\n';
  }
}

int cmd_train(const TrainFlags& f, bool seeds_given) {
  bench::ExperimentConfig c = resolve_config(f, seeds_given);
  eval::LocalEvaluator evaluator(c.parallelism);
  auto out = bench::run_experiment(c, evaluator, f.quiet ? bench::ProgressFn{} : print_trial);
  print_rows(out.rows);
  std::cout << "summary: " << bench::summary_path(c).string() << '\n';
  return 0;
}

int cmd_train_distributed(const TrainFlags& f, bool seeds_given, const std::string& listen, std::size_t workers,
                          double wait_s, double task_timeout_s) {
  if (workers == 0) throw bench::ConfigError("expected workers must be at least 1");
  bench::ExperimentConfig c = resolve_config(f, seeds_given);
  bench::ensure_writable_dir(c.output_dir / c.env_id);

  dist::MasterOptions mo;
  mo.task_timeout = std::chrono::milliseconds(static_cast<long long>(task_timeout_s * 1000));
  dist::Master master(dist::Address::parse(listen), mo);
  std::cout << "listening on port " << master.port() << ", waiting for " << workers << " worker(s)" << std::endl;
  master.wait_for_workers(workers, std::chrono::milliseconds(static_cast<long long>(wait_s * 1000)));

  std::vector<bench::SummaryRow> rows;
  for (auto variant : c.variants) {
    std::vector<bench::TrialSummary> trials;
    for (auto seed : c.seeds) {
      dist::DistributedEvaluator evaluator(master, c.env_id + "/" + std::string(es::variant_name(variant)) + "/" +
                                                       std::to_string(seed));
      auto t = bench::run_trial(c, variant, seed, evaluator);
      if (!f.quiet) print_trial(t);
      trials.push_back(t.summary);
    }
    rows.push_back(bench::make_row(c.env_id, std::string(es::variant_name(variant)), std::move(trials)));
  }
  master.shutdown("done");
  const auto summary = bench::make_summary(c, rows, "distributed");
  std::ofstream(bench::summary_path(c)) << summary.dump(2) << '\n';
  print_rows(rows);
  std::cout << "summary: " << bench::summary_path(c).string() << '\n';
  return 0;
}

int cmd_serve_worker(const std::string& address, const std::string& id, std::optional<std::uint64_t> crash_after,
                     int retries) {
  dist::WorkerOptions wo;
  wo.worker_id = id;
  wo.crash_after_tasks = crash_after;
  const dist::Address addr = dist::Address::parse(address);
  for (int attempt = 0;; ++attempt) {
    try {
      const auto exit = dist::worker_loop(addr, wo);
      std::cout << "worker " << id << " finished " << exit.tasks_completed << " task(s): " << exit.reason << '\n';
      return exit.reason == "bye" || exit.reason == "connection closed" || exit.reason == "injected crash"
                 ? 0
                 : kExitFailure;
    } catch (const dist::ConnectError& e) {
      if (attempt >= retries) throw;
      std::this_thread::sleep_for(std::chrono::milliseconds(500));
    }
  }
}

int cmd_eval(const std::string& path, std::uint64_t seed, std::size_t episodes) {
  const auto ck = policy::PolicyCheckpoint::load(path);
  const auto seeds = eval::test_episode_seeds(seed, 0, episodes);
  const auto report = eval::test_policy(ck.policy(), ck.normalizer, ck.env_id, seeds);
  std::cout << "returns:";
  for (double r : report.returns) std::cout << ' ' << format_real(r);
  std::cout << "\nmedian: " << format_real(report.median_return) << '\n';
  return 0;
}

int cmd_plot_data(const std::string& run_dir, std::string out_dir, std::size_t points) {
  if (out_dir.empty()) out_dir = run_dir;
  for (const auto& p : bench::write_plot_data(run_dir, out_dir, points)) std::cout << p.string() << '\n';
  return 0;
}

int cmd_sanity(const std::string& out_dir) {
  const auto report = bench::run_sanity(bench::SanityOptions{}, out_dir);
  std::cout << report.to_text();
  if (!report.passed()) {
    std::cerr << "sanity checks failed:";
    for (const auto& c : report.checks) {
      if (!c.passed) std::cerr << ' ' << c.name;
    }
    std::cerr << '\n';
    return kExitFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-policy evolution strategies for classic control"};
  app.require_subcommand(1);

  TrainFlags train_flags;
  auto* train = app.add_subcommand("train", "run seeded training trials locally");
  add_train_flags(train, train_flags);

  TrainFlags dist_flags;
  std::string listen = "127.0.0.1:0";
  std::size_t expected_workers = 1;
  double wait_s = 60.0;
  double task_timeout_s = 60.0;
  auto* train_dist = app.add_subcommand("train-distributed", "run training with remote workers");
  add_train_flags(train_dist, dist_flags);
  train_dist->add_option("--listen", listen, "host:port to listen on");
  train_dist->add_option("--workers", expected_workers, "workers to wait for before starting");
  train_dist->add_option("--wait", wait_s, "seconds to wait for workers");
  train_dist->add_option("--task-timeout", task_timeout_s, "seconds before a task is re-dispatched");

  std::string connect;
  std::string worker_id = "worker";
  std::optional<std::uint64_t> crash_after;
  int retries = 0;
  auto* worker = app.add_subcommand("serve-worker", "evaluate candidates for a master");
  worker->add_option("--connect", connect, "master host:port")->required();
  worker->add_option("--id", worker_id, "worker name");
  worker->add_option("--crash-after", crash_after, "drop the connection after N tasks (fault injection)");
  worker->add_option("--retries", retries, "connection attempts before giving up");

  std::string sanity_out;
  auto* sanity = app.add_subcommand("sanity", "test-function checks and distribution traces");
  sanity->add_option("-o,--output-dir", sanity_out, "where to write report and traces");

  std::string ck_path;
  std::uint64_t eval_seed = 0;
  std::size_t eval_episodes = 5;
  auto* evalc = app.add_subcommand("eval", "run test episodes of a saved checkpoint");
  evalc->add_option("checkpoint", ck_path, "checkpoint.json")->required();
  evalc->add_option("--seed", eval_seed, "test seed");
  evalc->add_option("--episodes", eval_episodes, "number of test episodes");

  std::string run_dir;
  std::string plot_out;
  std::size_t points = 100;
  auto* plot = app.add_subcommand("plot-data", "aggregate curve CSVs for plotting");
  plot->add_option("run_dir", run_dir, "directory holding trial curves")->required();
  plot->add_option("-o,--output-dir", plot_out, "where to write aggregates (default: run_dir)");
  plot->add_option("--points", points, "timestep grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train) return cmd_train(train_flags, train->count("--seeds") > 0);
    if (*train_dist) {
      return cmd_train_distributed(dist_flags, train_dist->count("--seeds") > 0, listen, expected_workers, wait_s,
                                   task_timeout_s);
    }
    if (*worker) return cmd_serve_worker(connect, worker_id, crash_after, retries);
    if (*sanity) {
      if (sanity_out.empty()) sanity_out = (bench::default_output_dir() / "sanity").string();
      return cmd_sanity(sanity_out);
    }
    if (*evalc) return cmd_eval(ck_path, eval_seed, eval_episodes);
    if (*plot) return cmd_plot_data(run_dir, plot_out, points);
  } catch (const bench::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bench::OutputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const dist::ConnectError& e) {
    std::cerr << "error: " << e.what() << " (is the master running? try --retries)\n";
    return kExitNetwork;
  } catch (const dist::BindError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNetwork;
  } catch (const dist::NetworkError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNetwork;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
