#include <doctest.h>

#include <set>

#include "fairalloc/errors.hpp"
#include "fairalloc/market/environment.hpp"
#include "fairalloc/market/rng.hpp"

using namespace fairalloc;
using namespace fairalloc::market;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("fluid LP of the two-type instance") {
  const auto lp = build_dlp(preset("D34"));
  CHECK(lp.objective[0] == doctest::Approx(3.6).epsilon(1e-15));
  CHECK(lp.objective[1] == doctest::Approx(0.12).epsilon(1e-15));
  MatrixXd c(2, 2);
  c << 1.2, 0.04, 0.6, 4.0;
  CHECK((lp.resource_matrix - c).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(lp.rhs == VectorXd{{1.0, 2.0}});
  CHECK(lp.upper_bounds == VectorXd::Ones(2));
}

TEST_CASE("fluid LP of the degenerate seven-type instance") {
  const auto lp = build_dlp(preset("E51"));
  const VectorXd p_mu{{1.05, 0.525, 0.6, 0.525, 0.975, 0.06, 0.07}};
  CHECK((lp.objective - p_mu).cwiseAbs().maxCoeff() < 1e-15);
  MatrixXd rows(2, 7);
  rows << 0.15, 0.075, 0.15, 0.075, 0.3, 0.015, 0.01, 0.15, 0.3, 0.075, 0.03, 0.075, 1.5, 0.7;
  CHECK((lp.resource_matrix.bottomRows(2) - rows).cwiseAbs().maxCoeff() < 1e-15);
  const VectorXd row1{{0.3, 0.15, 0.15, 0.15, 0.15, 0.015, 0.02}};
  CHECK((lp.resource_matrix.row(0).transpose() - row1).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(lp.rhs == VectorXd{{0.5, 1.0, 2.0}});
}

TEST_CASE("fluid LP of the 3-type instance") {
  const auto lp = build_dlp(preset("D32"));
  CHECK((lp.objective - VectorXd{{0.3, 0.3, 0.8}}).cwiseAbs().maxCoeff() < 1e-15);
  MatrixXd c(2, 3);
  c << 0.3, 0, 0.4, 0, 0.3, 0.4;
  CHECK((lp.resource_matrix - c).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(lp.rhs == VectorXd{{0.2, 0.2}});
}

TEST_CASE("fluid LP with a single type") {
  MatrixXd c(2, 1);
  c << 0.5, 2.0;
  const auto env = make_environment("one", make_distribution({1.0}, {3.0}, c), VectorXd{{1.0, 1.0}}, 5);
  const auto lp = build_dlp(env);
  CHECK(lp.objective == VectorXd{{3.0}});
  CHECK(lp.resource_matrix == c);
  CHECK(env.total_budget == VectorXd{{5.0, 5.0}});
}

TEST_CASE("presets") {
  CHECK(preset("E53").avg_budget == VectorXd{{0.5, 0.5, 0.5}});
  CHECK(preset("E51").dist.probabilities == VectorXd{{0.15, 0.15, 0.15, 0.15, 0.15, 0.15, 0.1}});
  CHECK(preset("D34").dist.types[0].reward == 6.0);
  CHECK(preset("D34").dist.types[1].reward == 0.3);
  CHECK(preset("E52", 100).total_budget == VectorXd{{50.0, 50.0, 150.0}});
  CHECK_THROWS_AS(preset("E54"), UnknownPreset);
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(preset(name).validate());
    CHECK(preset(name).id == name);
  }
}

TEST_CASE("distribution validation") {
  MatrixXd c(1, 2);
  c << 1, 1;
  CHECK_THROWS_AS(make_distribution({0.5, 0.6}, {1, 1}, c).validate(), InputError);
  CHECK_THROWS_AS(make_distribution({1.0, 0.0}, {1, 1}, c).validate(), InputError);
  CHECK_THROWS_AS(make_distribution({0.5, 0.5}, {1}, c), InputError);
  MatrixXd neg(1, 2);
  neg << 1, -1;
  CHECK_THROWS_AS(make_distribution({0.5, 0.5}, {1, 1}, neg).validate(), InputError);
  CHECK_THROWS_AS(make_environment("x", make_distribution({0.5, 0.5}, {1, 1}, c), VectorXd{{0.0}}, 3),
                  InputError);
  CHECK_THROWS_AS(make_environment("x", make_distribution({0.5, 0.5}, {1, 1}, c), VectorXd{{1.0}}, 0),
                  InputError);
}

TEST_CASE("sampling") {
  MatrixXd c1(1, 1);
  c1 << 1;
  const auto single = make_distribution({1.0}, {1.0}, c1);
  Rng r0(3);
  for (int k = 0; k < 1000; ++k) CHECK(sample_order(single, r0) == 0);

  MatrixXd c2(1, 2);
  c2 << 1, 1;
  const auto half = make_distribution({0.5, 0.5}, {1.0, 1.0}, c2);
  Rng r1(12345);
  int ones = 0;
  for (int k = 0; k < 100000; ++k) ones += sample_order(half, r1) == 0;
  CHECK(ones / 1e5 >= 0.49);
  CHECK(ones / 1e5 <= 0.51);

  const auto env = preset("E51");
  Rng r2(99);
  std::vector<int> counts(7, 0);
  for (int k = 0; k < 100000; ++k) counts[sample_order(env.dist, r2)]++;
  for (int j = 0; j < 7; ++j) CHECK(std::abs(counts[j] / 1e5 - env.dist.probabilities[j]) <= 0.01);

  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) CHECK(sample_order(env.dist, a) == sample_order(env.dist, b));
}

TEST_CASE("rng stream is the standard 64-bit Mersenne twister") {
  Rng r(5489);
  std::uint64_t last = 0;
  for (int k = 0; k < 10000; ++k) last = r.next();
  CHECK(last == 9981545732273789042ULL);
  Rng u(1);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("seed derivation") {
  const auto s = derive_seed(1, "E51", "adaptive_fair", 1000, 0);
  CHECK(s == derive_seed(1, "E51", "adaptive_fair", 1000, 0));
  std::set<std::uint64_t> seen = {s, derive_seed(2, "E51", "adaptive_fair", 1000, 0),
                                  derive_seed(1, "E52", "adaptive_fair", 1000, 0),
                                  derive_seed(1, "E51", "adaptive_interior", 1000, 0),
                                  derive_seed(1, "E51", "adaptive_fair", 2000, 0),
                                  derive_seed(1, "E51", "adaptive_fair", 1000, 1)};
  CHECK(seen.size() == 6);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
