#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "linevo/eval/train.hpp"

namespace linevo::bench {

struct CurveFile {
  std::string env_id;
  std::string variant;
  std::uint64_t seed = 0;
  std::filesystem::path path;
  std::vector<eval::TrainRecord> history;
};

/// Finds <env>/<variant>/seed_<s>/curve.csv below `run_dir`, sorted by
/// (env, variant, seed).
std::vector<CurveFile> discover_curves(const std::filesystem::path& run_dir);

/// Median test return of `history` at timestep t: the last record with
/// cumulative_timesteps <= t. NaN before the first record.
double value_at(const std::vector<eval::TrainRecord>& history, std::uint64_t t);

/// `points` evenly spaced timesteps ending at the largest timestep seen.
std::vector<std::uint64_t> uniform_grid(const std::vector<CurveFile>& curves, std::size_t points);

struct SeriesStats {
  double median = 0.0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  std::size_t count = 0;
};

/// NaNs are skipped; count = 0 yields NaN statistics.
SeriesStats series_stats(const std::vector<double>& values);

/// timesteps, then <variant>_median,<variant>_mean,<variant>_std,<variant>_n
/// for each variant present.
std::string format_aggregate_csv(const std::vector<CurveFile>& env_curves, const std::vector<std::uint64_t>& grid);

/// Writes <out_dir>/<env>_curves.csv per environment and returns the
/// paths. Throws ConfigError if no curve is found.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& run_dir,
                                                   const std::filesystem::path& out_dir, std::size_t points = 100);

}  // namespace linevo::bench
