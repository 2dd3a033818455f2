#include "sectionlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sectionlab/errors.hpp"

namespace sectionlab::lp {

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau layout: columns [x+ | x- | slacks | artificials | rhs]; the last
// row holds the objective in "z - c^T x = 0" form, so a negative entry marks
// an improving column when maximizing.
class Tableau {
 public:
  Tableau(const Constraints& cons) {
    n_ = cons.variables();
    const Eigen::Index m_ub = cons.A_ub.rows();
    const Eigen::Index m_eq = cons.A_eq.rows();
    if ((m_ub > 0 && cons.b_ub.size() != m_ub) || (m_eq > 0 && cons.b_eq.size() != m_eq) ||
        (m_ub > 0 && m_eq > 0 && cons.A_ub.cols() != cons.A_eq.cols())) {
      throw DimensionMismatch("lp: inconsistent constraint shapes");
    }
    m_ = m_ub + m_eq;
    slack_begin_ = 2 * n_;

    // rows needing an artificial: equalities and inequalities with negative rhs
    std::vector<bool> needs_art(m_, false);
    Eigen::Index n_art = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const bool eq = i >= m_ub;
      const double rhs = eq ? cons.b_eq(i - m_ub) : cons.b_ub(i);
      needs_art[i] = eq || rhs < 0.0;
      n_art += needs_art[i] ? 1 : 0;
    }
    art_begin_ = slack_begin_ + m_ub;
    cols_ = art_begin_ + n_art;
    t_ = Eigen::MatrixXd::Zero(m_ + 1, cols_ + 1);
    basis_.assign(m_, -1);

    Eigen::Index art = art_begin_;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const bool eq = i >= m_ub;
      Eigen::RowVectorXd row = eq ? cons.A_eq.row(i - m_ub) : cons.A_ub.row(i);
      double rhs = eq ? cons.b_eq(i - m_ub) : cons.b_ub(i);
      double slack = eq ? 0.0 : 1.0;
      if (rhs < 0.0) {
        row = -row;
        rhs = -rhs;
        slack = -slack;
      }
      t_.block(i, 0, 1, n_) = row;
      t_.block(i, n_, 1, n_) = -row;
      if (!eq) t_(i, slack_begin_ + i) = slack;
      t_(i, cols_) = rhs;
      if (needs_art[i]) {
        t_(i, art) = 1.0;
        basis_[i] = art++;
      } else {
        basis_[i] = slack_begin_ + i;
      }
    }
    rhs_scale_ = m_ == 0 ? 1.0 : 1.0 + t_.col(cols_).head(m_).cwiseAbs().maxCoeff();
  }

  // Returns the phase-one optimum (negated sum of artificials).
  double phase_one() {
    objective().setZero();
    for (Eigen::Index j = art_begin_; j < cols_; ++j) objective()(j) = 1.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] >= art_begin_) t_.row(m_) -= t_.row(i);
    }
    if (run(cols_) == Status::Unbounded) {
      throw SolverFailure("lp: phase one reported unbounded");
    }
    return t_(m_, cols_);
  }

  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (Eigen::Index j = 0; j < art_begin_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
      // a row with no usable column is redundant; its artificial stays at zero
    }
  }

  Status phase_two(const Eigen::VectorXd& c) {
    objective().setZero();
    objective().head(n_) = -c.transpose();
    objective().segment(n_, n_) = c.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double coef = t_(m_, basis_[i]);
      if (coef != 0.0) t_.row(m_) -= coef * t_.row(i);
    }
    return run(art_begin_);
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index b = basis_[i];
      if (b < n_) x(b) += t_(i, cols_);
      else if (b < 2 * n_) x(b - n_) -= t_(i, cols_);
    }
    return x;
  }

  double objective_value() const { return t_(m_, cols_); }
  double rhs_scale() const { return rhs_scale_; }

 private:
  Eigen::Block<Eigen::MatrixXd, 1, Eigen::Dynamic> objective() {
    return t_.block<1, Eigen::Dynamic>(m_, 0, 1, cols_);
  }

  // Bland's rule: lowest-index improving column, ties in the ratio test go to
  // the lowest-index basic variable.
  Status run(Eigen::Index allowed_cols) {
    const Eigen::Index budget = 10000 + 50 * (m_ + cols_);
    for (Eigen::Index iter = 0; iter < budget; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (t_(m_, j) < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = t_(i, cols_) / a;
        if (leave < 0 || ratio < best - 1e-14) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-14 && basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    throw SolverFailure("lp: iteration budget exhausted");
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  Eigen::Index n_ = 0, m_ = 0, cols_ = 0, slack_begin_ = 0, art_begin_ = 0;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
  double rhs_scale_ = 1.0;
};

}  // namespace

Result maximize(const Eigen::VectorXd& c, const Constraints& constraints, double tol) {
  if (c.size() != constraints.variables()) {
    throw DimensionMismatch("lp: objective size does not match variables");
  }
  Tableau tableau(constraints);
  const double infeasibility = -tableau.phase_one();
  if (infeasibility > tol * tableau.rhs_scale()) return {Status::Infeasible, {}, 0.0};
  tableau.drive_out_artificials();
  const Status status = tableau.phase_two(c);
  Result result;
  result.status = status;
  if (status == Status::Optimal) {
    result.x = tableau.solution();
    result.objective = c.dot(result.x);
  }
  return result;
}

bool is_feasible(const Constraints& constraints, double tol) {
  Tableau tableau(constraints);
  return -tableau.phase_one() <= tol * tableau.rhs_scale();
}

}  // namespace sectionlab::lp
