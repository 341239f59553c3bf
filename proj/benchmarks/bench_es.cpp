#include <benchmark/benchmark.h>

#include "linevo/es/strategy.hpp"

using namespace linevo;

namespace {

// One ask/tell cycle on the sphere; range(0) is the dimension.
void ask_tell(benchmark::State& st, es::Variant v) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Eigen::VectorXd m0 = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  auto s = es::new_strategy(v, n, 0.5, m0, std::nullopt, 1);
  for (auto _ : st) {
    // restart before the run converges into degeneracy
    if (s.state.sigma < 1e-6 || s.state.sigma > 1e6) {
      st.PauseTiming();
      s = es::new_strategy(v, n, 0.5, m0, std::nullopt, s.state.generation);
      st.ResumeTiming();
    }
    auto cands = es::ask(s.params, s.state);
    for (auto& c : cands) c.fitness = c.x.squaredNorm();
    s.state = es::tell(s.params, s.state, cands, es::Direction::kMinimize);
    benchmark::DoNotOptimize(s.state.sigma);
  }
  st.counters["lambda"] = static_cast<double>(s.params.lambda);
}

void BM_AskTellCsa(benchmark::State& st) { ask_tell(st, es::Variant::kCsa); }
void BM_AskTellSep(benchmark::State& st) { ask_tell(st, es::Variant::kSepCma); }
void BM_AskTellCma(benchmark::State& st) { ask_tell(st, es::Variant::kFullCma); }

void BM_SampleFromSeed(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto s = es::new_strategy(es::Variant::kFullCma, n, 0.5, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)),
                            std::nullopt, 1);
  const auto h = es::make_generation_header(s.state);
  std::size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(es::sample_candidate_from_seed(h, i, s.params));
    i = (i + 1) % s.params.lambda;
  }
}

}  // namespace

BENCHMARK(BM_AskTellCsa)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(BM_AskTellSep)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(BM_AskTellCma)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(BM_SampleFromSeed)->Arg(8)->Arg(64)->Arg(512);
