#include <doctest.h>

#include <cmath>

#include "fairalloc/errors.hpp"
#include "fairalloc/lp/lp_core.hpp"
#include "fairalloc/market/environment.hpp"
#include "fairalloc/metrics/metrics.hpp"

using namespace fairalloc;
using namespace fairalloc::metrics;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

EpisodeRecord record_with(long horizon, const std::vector<VectorXd>& ys, double total) {
  EpisodeRecord r;
  r.horizon = horizon;
  r.total_reward = total;
  for (long t = 1; t <= static_cast<long>(ys.size()); ++t) {
    policy::StepRecord s;
    s.t = t;
    s.y = ys[static_cast<std::size_t>(t - 1)];
    s.budget_after = VectorXd{{10.0}};
    r.steps.push_back(s);
  }
  return r;
}

}  // namespace

TEST_CASE("regret") {
  EpisodeRecord none;
  none.horizon = 1000;
  none.total_reward = 0.0;
  CHECK(regret(none, 3.0) == 3000.0);
  none.total_reward = 3000.0;
  CHECK(regret(none, 3.0) == 0.0);
  none.total_reward = 2990.5;
  CHECK(regret(none, 3.0) == doctest::Approx(9.5));
}

TEST_CASE("cumulative unfairness") {
  const VectorXd ystar{{0.5, 0.5}};
  CHECK(cumulative_unfairness(record_with(3, {VectorXd(), ystar, ystar}, 0), ystar) == 0.0);
  const auto one = record_with(2, {VectorXd(), VectorXd{{0.6, 0.4}}}, 0);
  CHECK(cumulative_unfairness(one, ystar) == doctest::Approx(0.02).epsilon(1e-12));
  // t = 1 is excluded even if a y was recorded there.
  const auto first = record_with(1, {VectorXd{{1.0, 1.0}}}, 0);
  CHECK(cumulative_unfairness(first, ystar) == 0.0);
  CHECK_THROWS_AS(cumulative_unfairness(one, VectorXd{{0.5}}), DimensionMismatch);
}

TEST_CASE("unfairness is additive over segments") {
  const VectorXd ystar{{0.2, 0.7, 0.1}};
  std::vector<VectorXd> all = {VectorXd()};
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 40; ++k) all.push_back(VectorXd{{u(gen), u(gen), u(gen)}});
  const auto whole = record_with(41, all, 0);
  EpisodeRecord head = whole, tail = whole;
  head.steps.resize(20);
  tail.steps.erase(tail.steps.begin(), tail.steps.begin() + 20);
  CHECK(cumulative_unfairness(whole, ystar) ==
        doctest::Approx(cumulative_unfairness(head, ystar) + cumulative_unfairness(tail, ystar)).epsilon(1e-14));
}

TEST_CASE("regret scales with rewards") {
  MatrixXd c(1, 2);
  c << 1, 2;
  const double alpha = 2.5;
  auto make = [&](double scale) {
    return market::make_environment("S", market::make_distribution({0.4, 0.6}, {1.0 * scale, 3.0 * scale}, c),
                                    VectorXd{{0.7}}, 400);
  };
  const auto base = make(1.0), scaled = make(alpha);
  const double opt_base = lp::optimal_value(market::build_dlp(base));
  const double opt_scaled = lp::optimal_value(market::build_dlp(scaled));
  CHECK(opt_scaled == doctest::Approx(alpha * opt_base).epsilon(1e-12));
  market::Rng a(5), b(5);
  const auto ra = policy::run_episode(base, policy::PolicyKind::adaptive_interior, a);
  const auto rb = policy::run_episode(scaled, policy::PolicyKind::adaptive_interior, b);
  CHECK(rb.total_reward == doctest::Approx(alpha * ra.total_reward).epsilon(1e-12));
  CHECK(regret(rb, opt_scaled) == doctest::Approx(alpha * regret(ra, opt_base)).epsilon(1e-9));
}

TEST_CASE("free single type: zero regret and zero unfairness") {
  MatrixXd c(1, 1);
  c << 0.0;
  const auto env = market::make_environment("F", market::make_distribution({1.0}, {2.0}, c), VectorXd{{1.0}}, 50);
  const auto dlp = market::build_dlp(env);
  const auto ystar = lp::analytic_center(dlp).y;
  CHECK(ystar == VectorXd{{1.0}});
  for (auto kind : policy::all_policy_kinds()) {
    market::Rng rng(1);
    const auto rec = policy::run_episode(env, kind, rng);
    CHECK(regret(rec, lp::optimal_value(dlp)) == 0.0);
    CHECK(cumulative_unfairness(rec, ystar) == 0.0);
    CHECK(first_infeasible_t(rec, env.dist.consumption_matrix()) == -1);
  }
}

TEST_CASE("first period with a short resource") {
  EpisodeRecord r;
  r.horizon = 4;
  for (long t = 1; t <= 4; ++t) {
    policy::StepRecord s;
    s.t = t;
    s.budget_after = VectorXd{{5.0 - t, 9.0}};
    r.steps.push_back(s);
  }
  MatrixXd c(2, 2);
  c << 2, 3, 0, 1;
  // B_3 = 3 >= 2, B_4 = 2 >= 2, B_5 = 1 < 2.
  CHECK(first_infeasible_t(r, c) == 5);
  MatrixXd c2(2, 2);
  c2 << 2.5, 3, 0, 0;
  CHECK(first_infeasible_t(r, c2) == 4);
  MatrixXd c3(2, 2);
  c3 << 0.5, 0, 0, 0;
  CHECK(first_infeasible_t(r, c3) == -1);
}

TEST_CASE("summaries") {
  std::vector<TrialMetrics> one = {{7, 10.0, 2.0, 3.0, -1}};
  const auto s1 = summarize(one);
  CHECK(s1.mean_regret == 2.0);
  CHECK(s1.mean_cumulative_unfairness == 3.0);
  CHECK(s1.se_regret == 0.0);

  std::vector<TrialMetrics> dup = {{7, 10.0, 2.0, 3.0, -1}, {7, 10.0, 2.0, 3.0, -1}};
  const auto s2 = summarize(dup);
  CHECK(s2.mean_regret == 2.0);
  CHECK(s2.se_regret == 0.0);
  CHECK(s2.se_cumulative_unfairness == 0.0);

  std::vector<TrialMetrics> mixed = {{9, 0, 4.0, 1.0, 50}, {3, 0, 2.0, 5.0, 40}, {5, 0, 0.0, 3.0, -1}};
  const auto s3 = summarize(mixed);
  CHECK(s3.trials[0].seed == 3);
  CHECK(s3.trials[2].seed == 9);
  CHECK(s3.mean_regret == 2.0);
  CHECK(s3.se_regret == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(s3.earliest_infeasible_t == 40);

  CHECK_THROWS_AS(summarize(std::vector<TrialMetrics>{}), EmptyInput);
  CHECK_THROWS_AS(summarize(std::vector<EpisodeRecord>{}, 1.0, VectorXd(), MatrixXd()), EmptyInput);
}

TEST_CASE("summary from records sorts by seed") {
  const VectorXd ystar{{0.5}};
  auto a = record_with(2, {VectorXd(), VectorXd{{0.7}}}, 1.0);
  a.seed = 20;
  auto b = record_with(2, {VectorXd(), VectorXd{{0.5}}}, 2.0);
  b.seed = 10;
  MatrixXd c(1, 1);
  c << 1.0;
  const auto s = summarize({a, b}, 1.0, ystar, c);
  CHECK(s.trials[0].seed == 10);
  CHECK(s.trials[0].regret == 0.0);
  CHECK(s.trials[1].cumulative_unfairness == doctest::Approx(0.04));
  CHECK(s.mean_regret == doctest::Approx(0.5));
}

TEST_CASE("acceptance series") {
  const auto a = record_with(3, {VectorXd(), VectorXd{{0.2, 0.4}}, VectorXd{{0.2, 0.4}}}, 0);
  const auto b = record_with(3, {VectorXd(), VectorXd{{0.6, 0.0}}, VectorXd{{0.4, 1.0}}}, 0);
  const auto single = acceptance_series({a}, 1);
  CHECK(std::isnan(single[0]));
  CHECK(single[1] == 0.4);
  CHECK(single[2] == 0.4);
  const auto both = acceptance_series({a, b}, 0);
  CHECK(both[1] == doctest::Approx(0.4));
  CHECK(both[2] == doctest::Approx(0.3));
  CHECK_THROWS_AS(acceptance_series({}, 0), EmptyInput);
}

TEST_CASE("interior policy acceptance converges on the degenerate instance") {
  const auto env = market::preset("E51", 2000);
  const auto ystar = lp::analytic_center(market::build_dlp(env)).y;
  std::vector<EpisodeRecord> recs;
  for (std::uint64_t k = 0; k < 10; ++k) {
    market::Rng rng(market::derive_seed(3, env.id, "adaptive_interior", 2000, k));
    recs.push_back(policy::run_episode(env, policy::PolicyKind::adaptive_interior, rng));
  }
  for (std::size_t j = 0; j < 7; ++j) {
    CAPTURE(j);
    const auto series = acceptance_series(recs, j);
    REQUIRE(series.size() == 2000);
    double early = 0.0, mid = 0.0;
    for (int t = 1; t < 50; ++t) early += std::abs(series[t] - ystar[j]) / 49.0;
    for (int t = 900; t < 1100; ++t) mid += std::abs(series[t] - ystar[j]) / 200.0;
    CHECK(mid <= early + 1e-9);
    CHECK(mid < 0.1);
  }
}
