#include "linevo/bench/plot_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "linevo/bench/config.hpp"
#include "linevo/bench/summary.hpp"
#include "linevo/common/numfmt.hpp"
#include "linevo/eval/curve_csv.hpp"

namespace linevo::bench {

namespace fs = std::filesystem;

std::vector<CurveFile> discover_curves(const fs::path& run_dir) {
  std::vector<CurveFile> out;
  std::error_code ec;
  if (!fs::is_directory(run_dir, ec)) return out;
  for (auto it = fs::recursive_directory_iterator(run_dir, ec); it != fs::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file() || it->path().filename() != "curve.csv") continue;
    const fs::path seed_dir = it->path().parent_path();
    const std::string seed_name = seed_dir.filename().string();
    if (seed_name.rfind("seed_", 0) != 0) continue;
    CurveFile c;
    try {
      c.seed = parse_u64(seed_name.substr(5));
    } catch (const std::exception&) {
      continue;
    }
    c.variant = seed_dir.parent_path().filename().string();
    c.env_id = seed_dir.parent_path().parent_path().filename().string();
    c.path = it->path();
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CurveFile& a, const CurveFile& b) {
    return std::tie(a.env_id, a.variant, a.seed) < std::tie(b.env_id, b.variant, b.seed);
  });
  for (auto& c : out) c.history = eval::read_curve_csv(c.path);
  return out;
}

double value_at(const std::vector<eval::TrainRecord>& history, std::uint64_t t) {
  auto it = std::upper_bound(history.begin(), history.end(), t,
                             [](std::uint64_t v, const eval::TrainRecord& r) { return v < r.cumulative_timesteps; });
  if (it == history.begin()) return std::numeric_limits<double>::quiet_NaN();
  return std::prev(it)->median_test_return;
}

std::vector<std::uint64_t> uniform_grid(const std::vector<CurveFile>& curves, std::size_t points) {
  std::uint64_t hi = 0;
  for (const auto& c : curves) {
    if (!c.history.empty()) hi = std::max(hi, c.history.back().cumulative_timesteps);
  }
  if (points == 0) points = 1;
  std::vector<std::uint64_t> grid;
  grid.reserve(points);
  for (std::size_t i = 1; i <= points; ++i) {
    const auto t = static_cast<std::uint64_t>(std::llround(static_cast<double>(hi) * static_cast<double>(i) /
                                                            static_cast<double>(points)));
    if (grid.empty() || t != grid.back()) grid.push_back(t);
  }
  return grid;
}

SeriesStats series_stats(const std::vector<double>& values) {
  std::vector<double> v;
  for (double x : values) {
    if (!std::isnan(x)) v.push_back(x);
  }
  SeriesStats s;
  s.count = v.size();
  if (v.empty()) {
    s.median = s.mean = s.std = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(v.size()));
  s.median = median_of(v);
  return s;
}

std::string format_aggregate_csv(const std::vector<CurveFile>& env_curves, const std::vector<std::uint64_t>& grid) {
  std::vector<std::string> variants;
  for (const auto& c : env_curves) {
    if (std::find(variants.begin(), variants.end(), c.variant) == variants.end()) variants.push_back(c.variant);
  }
  std::ostringstream out;
  out << "timesteps";
  for (const auto& v : variants) out << ',' << v << "_median," << v << "_mean," << v << "_std," << v << "_n";
  out << '\n';
  for (std::uint64_t t : grid) {
    out << t;
    for (const auto& v : variants) {
      std::vector<double> vals;
      for (const auto& c : env_curves) {
        if (c.variant == v) vals.push_back(value_at(c.history, t));
      }
      const SeriesStats s = series_stats(vals);
      out << ',' << format_real(s.median) << ',' << format_real(s.mean) << ',' << format_real(s.std) << ','
          << s.count;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<fs::path> write_plot_data(const fs::path& run_dir, const fs::path& out_dir, std::size_t points) {
  const std::vector<CurveFile> curves = discover_curves(run_dir);
  if (curves.empty()) throw ConfigError("no curve.csv files found under " + run_dir.string());
  ensure_writable_dir(out_dir);

  std::set<std::string> envs;
  for (const auto& c : curves) envs.insert(c.env_id);
  std::vector<fs::path> written;
  for (const auto& env : envs) {
    std::vector<CurveFile> mine;
    for (const auto& c : curves) {
      if (c.env_id == env) mine.push_back(c);
    }
    const fs::path path = out_dir / (env + "_curves.csv");
    std::ofstream f(path);
    if (!f) throw OutputError("cannot write " + path.string());
    f << format_aggregate_csv(mine, uniform_grid(mine, points));
    written.push_back(path);
  }
  return written;
}

}  // namespace linevo::bench
