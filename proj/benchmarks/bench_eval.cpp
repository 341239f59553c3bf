#include <benchmark/benchmark.h>

#include "linevo/dist/wire.hpp"
#include "linevo/env/classic_control.hpp"
#include "linevo/env/environment.hpp"
#include "linevo/es/strategy.hpp"
#include "linevo/eval/generation.hpp"
#include "linevo/eval/rollout.hpp"
#include "linevo/policy/linear_policy.hpp"

using namespace linevo;

namespace {

void BM_EnvStep(benchmark::State& st, const char* id) {
  const auto spec = env::env_spec(id);
  auto e = env::make_env(id);
  e->reset(0);
  std::uint64_t steps = 0;
  for (auto _ : st) {
    const policy::Action a = spec.action_space.is_discrete() ? policy::Action(std::size_t(steps % 2))
                                                             : policy::Action(Eigen::VectorXd::Zero(1).eval());
    const auto r = e->step(a);
    if (r.terminated || r.truncated) e->reset(steps);
    ++steps;
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(steps));
}

void BM_CartPoleEpisode(benchmark::State& st) {
  Eigen::VectorXd g(8);
  g << 0.0, 0.0, 0.5, 1.0, 0.0, 0.0, -0.5, -1.0;
  const policy::LinearPolicy p(g, 4, policy::ActionSpace::discrete(2));
  const policy::ObsNormalizer norm(4);
  auto e = env::make_env("CartPole");
  std::uint64_t seed = 0, steps = 0;
  for (auto _ : st) {
    const auto r = eval::rollout(p, norm, *e, seed++, env::RewardShaping::identity(), true);
    steps += r.timesteps;
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(steps));
}

void BM_EncodeGen(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto s = es::new_strategy(es::Variant::kFullCma, n, 0.5, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)),
                            std::nullopt, 1);
  const auto h = dist::make_gen_header(s.params, s.state, policy::ObsNormalizer(4), "CartPole", eval::FitnessSpec{}, "b");
  for (auto _ : st) {
    const auto line = dist::encode(dist::Gen{h});
    benchmark::DoNotOptimize(dist::decode(line));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_EnvStep, cartpole, "CartPole");
BENCHMARK_CAPTURE(BM_EnvStep, acrobot, "Acrobot");
BENCHMARK_CAPTURE(BM_EnvStep, pendulum, "Pendulum");
BENCHMARK(BM_CartPoleEpisode);
BENCHMARK(BM_EncodeGen)->Arg(8)->Arg(64);
