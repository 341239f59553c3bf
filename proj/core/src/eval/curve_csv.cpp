#include "linevo/eval/curve_csv.hpp"

#include <fstream>
#include <sstream>

#include "linevo/common/errors.hpp"
#include "linevo/common/numfmt.hpp"

namespace linevo::eval {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

std::string format_curve_csv(std::span<const TrainRecord> history, std::size_t test_episodes) {
  std::string out = "generation,cumulative_timesteps,median_test_return";
  for (std::size_t k = 1; k <= test_episodes; ++k) out += ",test_return_" + std::to_string(k);
  out += ",best_train_fitness,sigma\n";
  for (const auto& r : history) {
    out += std::to_string(r.generation) + ',' + std::to_string(r.cumulative_timesteps) + ',' +
           format_real(r.median_test_return);
    for (std::size_t k = 0; k < test_episodes; ++k) {
      out += ',';
      out += k < r.test_returns.size() ? format_real(r.test_returns[k]) : "nan";
    }
    out += ',' + format_real(r.best_train_fitness) + ',' + format_real(r.sigma) + '\n';
  }
  return out;
}

void write_curve_csv(const std::filesystem::path& path, std::span<const TrainRecord> history,
                     std::size_t test_episodes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_curve_csv(history, test_episodes);
}

std::vector<TrainRecord> read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument(path.string() + ": empty curve file");
  const auto header = split(line, ',');
  if (header.size() < 5 || header[0] != "generation" || header[1] != "cumulative_timesteps" ||
      header[2] != "median_test_return") {
    throw InvalidArgument(path.string() + ": not a training curve");
  }
  const std::size_t k = header.size() - 5;
  std::vector<TrainRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw InvalidArgument(path.string() + ": ragged row");
    TrainRecord r;
    r.generation = parse_u64(cells[0]);
    r.cumulative_timesteps = parse_u64(cells[1]);
    r.median_test_return = std::stod(cells[2]);
    for (std::size_t i = 0; i < k; ++i) r.test_returns.push_back(std::stod(cells[3 + i]));
    r.best_train_fitness = std::stod(cells[3 + k]);
    r.sigma = std::stod(cells[4 + k]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace linevo::eval
