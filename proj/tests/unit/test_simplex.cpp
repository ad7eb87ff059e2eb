#include <doctest.h>

#include "fairalloc/errors.hpp"
#include "fairalloc/lp/simplex.hpp"

using namespace fairalloc::lp;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

LinearProgram make(VectorXd obj, MatrixXd a, VectorXd b, std::vector<Sense> s) {
  return LinearProgram{std::move(obj), std::move(a), std::move(b), std::move(s)};
}

}  // namespace

TEST_CASE("two-phase simplex: textbook maximum") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  auto r = solve_linear_program(make(VectorXd{{3.0, 5.0}}, a, VectorXd{{4.0, 12.0, 18.0}},
                                     {Sense::less_equal, Sense::less_equal, Sense::less_equal}));
  REQUIRE(r.status == LinearProgramResult::Status::optimal);
  CHECK(r.objective_value == doctest::Approx(36.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("two-phase simplex: equality and >= rows") {
  // min x + y (as max -x - y), x + y >= 2, x - y = 0 -> (1, 1)
  MatrixXd a(2, 2);
  a << 1, 1, 1, -1;
  auto r = solve_linear_program(make(VectorXd{{-1.0, -1.0}}, a, VectorXd{{2.0, 0.0}},
                                     {Sense::greater_equal, Sense::equal}));
  REQUIRE(r.status == LinearProgramResult::Status::optimal);
  CHECK(r.objective_value == doctest::Approx(-2.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
}

TEST_CASE("two-phase simplex: negative rhs is normalized") {
  // -x <= -1 means x >= 1; max -x -> x = 1
  MatrixXd a(1, 1);
  a << -1;
  auto r = solve_linear_program(make(VectorXd{{-1.0}}, a, VectorXd{{-1.0}}, {Sense::less_equal}));
  REQUIRE(r.status == LinearProgramResult::Status::optimal);
  CHECK(r.x[0] == doctest::Approx(1.0));
}

TEST_CASE("two-phase simplex: infeasible and unbounded") {
  MatrixXd a(2, 1);
  a << 1, 1;
  auto inf = solve_linear_program(make(VectorXd{{1.0}}, a, VectorXd{{1.0, 2.0}},
                                       {Sense::less_equal, Sense::greater_equal}));
  CHECK(inf.status == LinearProgramResult::Status::infeasible);

  MatrixXd u(1, 2);
  u << 1, -1;
  auto unb = solve_linear_program(make(VectorXd{{0.0, 1.0}}, u, VectorXd{{1.0}}, {Sense::less_equal}));
  CHECK(unb.status == LinearProgramResult::Status::unbounded);
}

TEST_CASE("two-phase simplex: redundant equality rows are dropped") {
  MatrixXd a(2, 2);
  a << 1, 1, 2, 2;
  auto r = solve_linear_program(make(VectorXd{{1.0, 0.0}}, a, VectorXd{{1.0, 2.0}}, {Sense::equal, Sense::equal}));
  REQUIRE(r.status == LinearProgramResult::Status::optimal);
  CHECK(r.objective_value == doctest::Approx(1.0));
}

TEST_CASE("Bland's rule terminates on a cycling example") {
  // Beale's example cycles under the largest-coefficient rule.
  MatrixXd a(3, 4);
  a << 0.25, -60, -1.0 / 25.0, 9, 0.5, -90, -1.0 / 50.0, 3, 0, 0, 1, 0;
  auto r = solve_linear_program(make(VectorXd{{0.75, -150, 1.0 / 50.0, -6}}, a, VectorXd{{0.0, 0.0, 1.0}},
                                     {Sense::less_equal, Sense::less_equal, Sense::less_equal}));
  REQUIRE(r.status == LinearProgramResult::Status::optimal);
  CHECK(r.objective_value == doctest::Approx(0.05));
}

TEST_CASE("tableau pivot limit raises IterationLimit") {
  MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  CHECK_THROWS_AS(solve_linear_program(make(VectorXd{{3.0, 5.0}}, a, VectorXd{{4.0, 12.0, 18.0}},
                                            {Sense::less_equal, Sense::less_equal, Sense::less_equal}),
                                       1),
                  fairalloc::IterationLimit);
}

TEST_CASE("tableau respects the allowed mask") {
  MatrixXd a(1, 3);
  a << 1, 1, 1;
  Tableau tab(a, VectorXd{{1.0}}, {2});
  tab.set_objective(VectorXd{{1.0, 2.0, 0.0}});
  std::vector<char> allowed = {1, 0, 1};
  REQUIRE(tab.maximize(allowed, 100) == Tableau::Status::optimal);
  CHECK(tab.objective_value() == doctest::Approx(1.0));
  CHECK(tab.primal()[0] == doctest::Approx(1.0));
}
