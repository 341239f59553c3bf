#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "linevo/eval/train.hpp"

namespace linevo::eval {

/// generation,cumulative_timesteps,median_test_return,test_return_1..k,
/// best_train_fitness,sigma. Reals in shortest round-trip form.
std::string format_curve_csv(std::span<const TrainRecord> history, std::size_t test_episodes);
void write_curve_csv(const std::filesystem::path& path, std::span<const TrainRecord> history,
                     std::size_t test_episodes);
std::vector<TrainRecord> read_curve_csv(const std::filesystem::path& path);

}  // namespace linevo::eval
