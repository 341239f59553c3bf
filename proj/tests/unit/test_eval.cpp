#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "linevo/common/errors.hpp"
#include "linevo/es/strategy.hpp"
#include "linevo/eval/curve_csv.hpp"
#include "linevo/eval/generation.hpp"
#include "linevo/eval/rollout.hpp"
#include "linevo/eval/train.hpp"
#include "linevo/policy/checkpoint.hpp"

using namespace linevo;
using namespace linevo::eval;

namespace {

es::Strategy cartpole_strategy(es::Variant v, std::uint64_t seed) {
  return es::new_strategy(v, 8, 0.5, Eigen::VectorXd::Zero(8), 6, seed, es::LambdaRule::kRl);
}

}  // namespace

TEST_CASE("median of test returns") {
  CHECK(median({500, 500, 500, 500, 500}) == 500);
  CHECK(median({-80, -95, -100, -120, -70}) == -95);
  CHECK(median({1, 2, 3, 4}) == 2.5);
}

TEST_CASE("zero policy on pendulum runs to truncation") {
  const auto spec = env::env_spec("Pendulum");
  const auto p = policy::LinearPolicy::zeros(3, spec.action_space);
  auto env = env::make_env("Pendulum");
  const auto r = rollout(p, policy::ObsNormalizer(3), *env, 5, env::RewardShaping::identity(), true);
  CHECK(r.timesteps == 200);
  CHECK(r.delta.count() == 200);
  CHECK(r.raw_return < 0.0);
  CHECK(r.raw_return == r.shaped_return);
}

TEST_CASE("acrobot return counts steps when the goal is missed") {
  const auto spec = env::env_spec("Acrobot");
  const auto p = policy::LinearPolicy::zeros(6, spec.action_space);
  auto env = env::make_env("Acrobot");
  const auto r = rollout(p, policy::ObsNormalizer(6), *env, 1, env::RewardShaping::identity(), false);
  CHECK(r.timesteps == 500);
  CHECK(r.raw_return == -500.0);
  CHECK(r.delta.count() == 0);
}

TEST_CASE("rollouts are deterministic and the delta sees every observation") {
  Eigen::VectorXd g(8);
  g << 0.1, -0.2, 0.3, 0.4, -0.5, 0.6, -0.7, 0.8;
  const policy::LinearPolicy p(g, 4, policy::ActionSpace::discrete(2));
  policy::ObsNormalizer norm(4);
  norm.update(Eigen::Vector4d(0.01, 0.2, -0.03, 0.1));
  norm.update(Eigen::Vector4d(-0.01, -0.1, 0.02, -0.3));
  auto e1 = env::make_env("CartPole");
  auto e2 = env::make_env("CartPole");
  const auto a = rollout(p, norm, *e1, 77, env::RewardShaping::identity(), false);
  const auto b = rollout(p, norm, *e2, 77, env::RewardShaping::identity(), true);
  CHECK(a.raw_return == b.raw_return);
  CHECK(a.timesteps == b.timesteps);
  CHECK(b.delta.count() == b.timesteps);
  CHECK(norm.count() == 2);

  // Alive-bonus shaping only changes the training signal.
  auto e3 = env::make_env("CartPole");
  const auto c = rollout(p, norm, *e3, 77, env::RewardShaping::drop_alive_bonus(1.0), false);
  CHECK(c.raw_return == a.raw_return);
  CHECK(c.shaped_return == 0.0);
}

TEST_CASE("episode seeds") {
  CHECK(train_episode_seed(1, 2, 0, 0, true) == train_episode_seed(1, 2, 5, 0, true));
  CHECK(train_episode_seed(1, 2, 0, 0, true) != train_episode_seed(1, 3, 0, 0, true));
  CHECK(train_episode_seed(1, 2, 0, 0, true) != train_episode_seed(1, 2, 0, 1, true));
  CHECK(train_episode_seed(1, 2, 0, 0, false) != train_episode_seed(1, 2, 1, 0, false));
  const auto t = test_episode_seeds(4, 9, 5);
  CHECK(t.size() == 5);
  CHECK(t == test_episode_seeds(4, 9, 5));
  CHECK(t[0] != t[1]);
  CHECK(t[0] != train_episode_seed(4, 9, 0, 0, true));
}

TEST_CASE("generation results do not depend on parallelism") {
  for (auto v : {es::Variant::kCsa, es::Variant::kFullCma}) {
    auto s = cartpole_strategy(v, 31);
    const auto cands = es::ask(s.params, s.state);
    policy::ObsNormalizer norm(4);
    FitnessSpec spec;
    spec.train_episodes = 2;
    const auto one = evaluate_generation(cands, "CartPole-v1", spec, 0, 31, norm, 1);
    const auto eight = evaluate_generation(cands, "CartPole-v1", spec, 0, 31, norm, 8);
    REQUIRE(one.size() == cands.size());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(std::memcmp(&one[i].fitness, &eight[i].fitness, sizeof(double)) == 0);
      CHECK(one[i].timesteps == eight[i].timesteps);
      CHECK(one[i].delta.mean() == eight[i].delta.mean());
      total += one[i].timesteps;
    }
    CHECK(total <= 2 * 500 * cands.size());
    const auto m1 = merge_deltas(one, 4);
    const auto m8 = merge_deltas(eight, 4);
    CHECK(m1.count() == total);
    CHECK(m1.mean() == m8.mean());
    CHECK(m1.m2() == m8.m2());
  }
}

TEST_CASE("identical genomes share fitness under common random numbers") {
  auto s = cartpole_strategy(es::Variant::kCsa, 2);
  auto cands = es::ask(s.params, s.state);
  cands[3].x = cands[1].x;
  const auto r = evaluate_generation(cands, "CartPole-v1", FitnessSpec{}, 0, 2, policy::ObsNormalizer(4), 2);
  CHECK(r[1].fitness == r[3].fitness);
  const auto direct = evaluate_candidate(cands[1].x, policy::ObsNormalizer(4), "CartPole-v1", FitnessSpec{}, 2, 0, 1);
  CHECK(direct.fitness == r[1].fitness);
}

TEST_CASE("rollout failures name the candidate") {
  auto s = cartpole_strategy(es::Variant::kCsa, 2);
  auto cands = es::ask(s.params, s.state);
  cands[4].x(0) = std::nan("");
  cands[2].x(1) = std::nan("");
  try {
    evaluate_generation(cands, "CartPole-v1", FitnessSpec{}, 0, 2, policy::ObsNormalizer(4), 3);
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("fitness spec json") {
  FitnessSpec f;
  f.train_episodes = 3;
  f.common_random_numbers = false;
  f.shaping = env::RewardShaping::drop_alive_bonus(1.0);
  const auto g = FitnessSpec::from_json(f.to_json());
  CHECK(g.train_episodes == 3);
  CHECK(g.test_episodes == 5);
  CHECK_FALSE(g.common_random_numbers);
  CHECK(g.shaping == f.shaping);
}

TEST_CASE("training is deterministic and respects the budget") {
  TrainConfig c;
  c.env_id = "CartPole";
  c.variant = es::Variant::kSepCma;
  c.sigma0 = 0.1;
  c.lambda = 4;
  c.budget_timesteps = 3000;
  c.seed = 5;
  LocalEvaluator ev1(1), ev3(3);
  const auto a = train(c, ev1);
  const auto b = train(c, ev3);
  REQUIRE(!a.history.empty());
  CHECK(format_curve_csv(a.history, 5) == format_curve_csv(b.history, 5));
  CHECK(a.lambda == 4);
  CHECK(a.genome_dim == 8);
  CHECK_FALSE(a.failed);
  std::uint64_t prev = 0;
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].generation == i);
    CHECK(a.history[i].cumulative_timesteps > prev);
    CHECK(a.history[i].test_returns.size() == 5);
    prev = a.history[i].cumulative_timesteps;
  }
  CHECK(a.history[a.history.size() - 2].cumulative_timesteps < 3000);
  REQUIRE(a.best.has_value());
  double best = -1e300;
  for (const auto& r : a.history) best = std::max(best, r.median_test_return);
  CHECK(a.best_median_test_return == best);
}

TEST_CASE("default lambda for training is the RL rule") {
  TrainConfig c;
  c.env_id = "CartPole";
  c.budget_timesteps = 1;
  c.max_generations = 1;
  LocalEvaluator ev;
  CHECK(train(c, ev).lambda == 32);
}

TEST_CASE("test_every carries the last test result forward") {
  TrainConfig c;
  c.env_id = "Acrobot";
  c.variant = es::Variant::kCsa;
  c.sigma0 = 0.05;
  c.lambda = 4;
  c.budget_timesteps = 100000;
  c.max_generations = 6;
  c.test_every = 3;
  LocalEvaluator ev;
  const auto r = train(c, ev);
  REQUIRE(r.history.size() == 6);
  CHECK(r.history[1].median_test_return == r.history[0].median_test_return);
  CHECK(r.history[2].test_returns == r.history[0].test_returns);
}

TEST_CASE("curve csv round trip") {
  TrainConfig c;
  c.env_id = "Pendulum";
  c.variant = es::Variant::kFullCma;
  c.sigma0 = 0.1;
  c.budget_timesteps = 20000;
  c.seed = 3;
  LocalEvaluator ev;
  const auto r = train(c, ev);
  const auto path = std::filesystem::temp_directory_path() / "linevo_curve_test.csv";
  write_curve_csv(path, r.history, 5);
  const auto back = read_curve_csv(path);
  std::filesystem::remove(path);
  REQUIRE(back.size() == r.history.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].median_test_return == r.history[i].median_test_return);
    CHECK(back[i].sigma == r.history[i].sigma);
    CHECK(back[i].test_returns == r.history[i].test_returns);
    CHECK(back[i].best_train_fitness == r.history[i].best_train_fitness);
  }
  CHECK(format_curve_csv(back, 5) == format_curve_csv(r.history, 5));
  const auto header = format_curve_csv(back, 5).substr(0, 120);
  CHECK(header.rfind("generation,cumulative_timesteps,median_test_return,test_return_1,", 0) == 0);
}

TEST_CASE("committed solved CartPole checkpoint scores 500") {
  const auto ck = policy::PolicyCheckpoint::load(std::string(LINEVO_FIXTURE_DIR) + "/CartPole-v1_solved_checkpoint.json");
  const auto seeds = test_episode_seeds(0, 0, 5);
  const auto r = test_policy(ck.policy(), ck.normalizer, ck.env_id, seeds);
  CHECK(r.median_return == 500.0);
  CHECK(r.returns.size() == 5);
}
