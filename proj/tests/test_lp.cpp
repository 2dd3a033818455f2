#include <doctest.h>

#include "sectionlab/errors.hpp"
#include "sectionlab/lp.hpp"

using namespace sectionlab;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

lp::Constraints square(double half) {
  lp::Constraints c;
  c.A_ub = MatrixXd(4, 2);
  c.A_ub << 1, 0, -1, 0, 0, 1, 0, -1;
  c.b_ub = VectorXd::Constant(4, half);
  c.A_eq = MatrixXd(0, 2);
  c.b_eq = VectorXd(0);
  return c;
}

}  // namespace

TEST_CASE("maximize over a square") {
  const auto r = lp::maximize(VectorXd::Ones(2), square(1.0));
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(1.0));
}

TEST_CASE("free variables reach negative optima") {
  VectorXd c(2);
  c << -1, -2;
  const auto r = lp::maximize(c, square(1.0));
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.x(0) == doctest::Approx(-1.0));
  CHECK(r.x(1) == doctest::Approx(-1.0));
}

TEST_CASE("negative right-hand sides need phase one") {
  // x >= 2, y >= 3, x + y <= 10
  lp::Constraints c;
  c.A_ub = MatrixXd(3, 2);
  c.A_ub << -1, 0, 0, -1, 1, 1;
  c.b_ub = VectorXd(3);
  c.b_ub << -2, -3, 10;
  c.A_eq = MatrixXd(0, 2);
  c.b_eq = VectorXd(0);
  VectorXd obj(2);
  obj << 1, 0;
  const auto r = lp::maximize(obj, c);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == doctest::Approx(7.0));
  CHECK(lp::is_feasible(c));
}

TEST_CASE("infeasible and unbounded") {
  lp::Constraints c = square(1.0);
  c.A_eq = MatrixXd(1, 2);
  c.A_eq << 1, 1;
  c.b_eq = VectorXd::Constant(1, 3.0);
  CHECK_FALSE(lp::is_feasible(c));
  CHECK(lp::maximize(VectorXd::Ones(2), c).status == lp::Status::Infeasible);

  lp::Constraints half;
  half.A_ub = MatrixXd(1, 2);
  half.A_ub << 1, 0;
  half.b_ub = VectorXd::Constant(1, 1.0);
  half.A_eq = MatrixXd(0, 2);
  half.b_eq = VectorXd(0);
  VectorXd obj(2);
  obj << 0, 1;
  CHECK(lp::maximize(obj, half).status == lp::Status::Unbounded);
}

TEST_CASE("equality constraints and degenerate vertices") {
  // square with the redundant constraint x + y <= 2 through a vertex
  lp::Constraints c = square(1.0);
  c.A_ub.conservativeResize(5, 2);
  c.A_ub.row(4) << 1, 1;
  c.b_ub.conservativeResize(5);
  c.b_ub(4) = 2.0;
  c.A_eq = MatrixXd(1, 2);
  c.A_eq << 1, -1;
  c.b_eq = VectorXd::Zero(1);
  const auto r = lp::maximize(VectorXd::Ones(2), c);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.x(0) == doctest::Approx(r.x(1)));
}

TEST_CASE("shape mismatch") {
  lp::Constraints c = square(1.0);
  c.b_ub = VectorXd::Ones(3);
  CHECK_THROWS_AS(lp::is_feasible(c), DimensionMismatch);
}

TEST_CASE("touching a single point is feasible") {
  lp::Constraints c = square(1.0);
  c.A_eq = MatrixXd(2, 2);
  c.A_eq << 1, 0, 0, 1;
  c.b_eq = VectorXd::Ones(2);
  CHECK(lp::is_feasible(c));
  c.b_eq(0) = 1.0 + 1e-6;
  CHECK_FALSE(lp::is_feasible(c));
}
