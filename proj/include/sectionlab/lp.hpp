#pragma once

// Dense two-phase primal simplex with Bland's anti-cycling rule, sized for
// the small feasibility and boundedness problems the body code poses
// (tens of rows, a handful of free variables).

#include <Eigen/Dense>

namespace sectionlab::lp {

// { x free : A_ub x <= b_ub, A_eq x = b_eq }. Either block may be empty
// (zero rows) but both must have the same column count.
struct Constraints {
  Eigen::MatrixXd A_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;

  Eigen::Index variables() const { return A_ub.rows() > 0 ? A_ub.cols() : A_eq.cols(); }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

inline constexpr double kFeasibilityTolerance = 1e-9;

// maximize c^T x over the constraint set. Throws SolverFailure if the
// iteration budget runs out.
Result maximize(const Eigen::VectorXd& c, const Constraints& constraints,
                double tol = kFeasibilityTolerance);

// Phase one only.
bool is_feasible(const Constraints& constraints, double tol = kFeasibilityTolerance);

}  // namespace sectionlab::lp
