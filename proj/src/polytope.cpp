#include "sectionlab/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sectionlab/errors.hpp"
#include "sectionlab/lp.hpp"

namespace sectionlab::polytope {

namespace {

constexpr double kZeroRow = 1e-12;
constexpr double kPivot = 1e-12;

// Unit-normal rows with duplicates removed. `empty` is set when a zero row
// carries a negative offset.
struct NormalizedRows {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  bool empty = false;
};

NormalizedRows normalize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  NormalizedRows out;
  const Eigen::Index k = A.cols();
  out.A.resize(A.rows(), k);
  out.b.resize(A.rows());
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double norm = A.row(i).norm();
    if (norm < kZeroRow) {
      if (b(i) < -kVertexTolerance) {
        out.empty = true;
        return out;
      }
      continue;
    }
    const Eigen::RowVectorXd row = A.row(i) / norm;
    const double rhs = b(i) / norm;
    bool duplicate = false;
    for (Eigen::Index j = 0; j < kept; ++j) {
      if ((out.A.row(j) - row).cwiseAbs().maxCoeff() <= kVertexTolerance) {
        // parallel, same orientation: keep the tighter offset
        out.b(j) = std::min(out.b(j), rhs);
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    out.A.row(kept) = row;
    out.b(kept) = rhs;
    ++kept;
  }
  out.A.conservativeResize(kept, k);
  out.b.conservativeResize(kept);
  return out;
}

// Gaussian elimination with partial pivoting for the k x k vertex systems.
bool solve_small(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                 const std::vector<int>& rows, Eigen::VectorXd& x) {
  const int k = static_cast<int>(rows.size());
  double m[kMaxExactDimension][kMaxExactDimension + 1];
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) m[r][c] = A(rows[r], c);
    m[r][k] = b(rows[r]);
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < kPivot) return false;
    if (piv != col) {
      for (int c = 0; c <= k; ++c) std::swap(m[piv][c], m[col][c]);
    }
    for (int r = col + 1; r < k; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c <= k; ++c) m[r][c] -= f * m[col][c];
    }
  }
  x.resize(k);
  for (int r = k - 1; r >= 0; --r) {
    double s = m[r][k];
    for (int c = r + 1; c < k; ++c) s -= m[r][c] * x(c);
    x(r) = s / m[r][r];
  }
  return true;
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<Eigen::VectorXd> enumerate_normalized(const Eigen::MatrixXd& A,
                                                  const Eigen::VectorXd& b) {
  std::vector<Eigen::VectorXd> vertices;
  const int m = static_cast<int>(A.rows());
  const int k = static_cast<int>(A.cols());
  if (k == 0 || m < k) return vertices;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  Eigen::VectorXd x;
  do {
    if (!solve_small(A, b, idx, x)) continue;
    const Eigen::VectorXd slack = A * x - b;
    if (slack.maxCoeff() > kVertexTolerance * (1.0 + x.cwiseAbs().maxCoeff())) continue;
    const bool seen = std::any_of(vertices.begin(), vertices.end(), [&](const auto& v) {
      return (v - x).cwiseAbs().maxCoeff() <= kVertexTolerance;
    });
    if (!seen) vertices.push_back(x);
  } while (next_combination(idx, m));
  return vertices;
}

double interval_length(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double a = A(i, 0);
    if (a > 0.0) hi = std::min(hi, b(i) / a);
    else if (a < 0.0) lo = std::max(lo, b(i) / a);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw UnboundedPolytope("polytope volume: unbounded interval");
  }
  return std::max(0.0, hi - lo);
}

double volume_normalized(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index k = A.cols();
  if (k == 1) return interval_length(A, b);

  const auto vertices = enumerate_normalized(A, b);
  if (static_cast<Eigen::Index>(vertices.size()) < k + 1) return 0.0;
  Eigen::VectorXd center = Eigen::VectorXd::Zero(k);
  for (const auto& v : vertices) center += v;
  center /= static_cast<double>(vertices.size());

  double total = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double height = b(i) - A.row(i).dot(center);
    if (height <= kZeroRow) continue;
    const double tight_tol = kVertexTolerance * (1.0 + std::abs(b(i)));
    const auto tight = std::count_if(vertices.begin(), vertices.end(), [&](const auto& v) {
      return std::abs(A.row(i).dot(v) - b(i)) <= tight_tol;
    });
    if (tight < k) continue;

    // orthonormal frame of the facet hyperplane
    Eigen::HouseholderQR<Eigen::VectorXd> qr(A.row(i).transpose());
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
    const Eigen::MatrixXd frame = q.rightCols(k - 1);
    const Eigen::VectorXd origin = b(i) * A.row(i).transpose();

    Eigen::MatrixXd facet_A(A.rows() - 1, k - 1);
    Eigen::VectorXd facet_b(A.rows() - 1);
    for (Eigen::Index j = 0, r = 0; j < A.rows(); ++j) {
      if (j == i) continue;
      facet_A.row(r) = A.row(j) * frame;
      facet_b(r) = b(j) - A.row(j).dot(origin);
      ++r;
    }
    const NormalizedRows facet = normalize(facet_A, facet_b);
    if (facet.empty) continue;
    total += height * volume_normalized(facet.A, facet.b) / static_cast<double>(k);
  }
  return total;
}

}  // namespace

bool is_bounded(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  lp::Constraints cons{A, b, Eigen::MatrixXd(0, A.cols()), Eigen::VectorXd(0)};
  for (Eigen::Index i = 0; i < A.cols(); ++i) {
    for (const double sign : {1.0, -1.0}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(A.cols());
      c(i) = sign;
      const auto res = lp::maximize(c, cons);
      if (res.status == lp::Status::Infeasible) return true;
      if (res.status == lp::Status::Unbounded) return false;
    }
  }
  return true;
}

std::vector<Eigen::VectorXd> vertex_enumeration(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& b) {
  if (A.rows() != b.size()) throw DimensionMismatch("vertex_enumeration: A and b disagree");
  if (A.rows() > kMaxRows || A.cols() > kMaxExactDimension || A.cols() < 1) {
    throw DomainError("vertex_enumeration supports m <= 64 rows and 1 <= k <= 4 columns");
  }
  if (!is_bounded(A, b)) throw UnboundedPolytope("vertex_enumeration: polytope is unbounded");
  return enumerate_vertices(A, b);
}

std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& b) {
  const NormalizedRows rows = normalize(A, b);
  if (rows.empty) return {};
  return enumerate_normalized(rows.A, rows.b);
}

double volume(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  if (A.rows() != b.size()) throw DimensionMismatch("polytope volume: A and b disagree");
  if (A.cols() < 1 || A.cols() > kMaxExactDimension) {
    throw UnsupportedExactVolume("exact polytope volume is limited to dimension <= " +
                                 std::to_string(kMaxExactDimension));
  }
  const NormalizedRows rows = normalize(A, b);
  if (rows.empty) return 0.0;
  return volume_normalized(rows.A, rows.b);
}

}  // namespace sectionlab::polytope
