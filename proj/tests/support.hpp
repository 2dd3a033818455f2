#pragma once

// Shared fixtures for the test suites: random bodies and independent oracles.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "sectionlab/bodies.hpp"
#include "sectionlab/random.hpp"
#include "sectionlab/sampling.hpp"

namespace sectionlab::testing {

inline Eigen::MatrixXd random_rotation(int d, RandomStream& s) {
  return sample_grassmannian(d, d, s).basis();
}

inline ConvexBody random_ellipsoid(int d, RandomStream& s) {
  Eigen::VectorXd axes(d);
  for (int i = 0; i < d; ++i) axes(i) = 0.5 + 1.5 * s.uniform();
  const Eigen::MatrixXd R = random_rotation(d, s);
  const Eigen::MatrixXd M = R * axes.array().square().inverse().matrix().asDiagonal() * R.transpose();
  return ConvexBody::ellipsoid(Eigen::VectorXd::Zero(d), 0.5 * (M + M.transpose()));
}

// Intersection of m random halfspaces tangent to spheres of radius in
// [0.6, 1] with a cube [-1.5, 1.5]^d, which keeps it bounded.
inline ConvexBody random_hpolytope(int d, int m, RandomStream& s) {
  Eigen::MatrixXd A(m + 2 * d, d);
  Eigen::VectorXd b(m + 2 * d);
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd n(d);
    for (int j = 0; j < d; ++j) n(j) = s.normal();
    A.row(i) = n.normalized().transpose();
    b(i) = 0.6 + 0.4 * s.uniform();
  }
  for (int j = 0; j < d; ++j) {
    A.row(m + 2 * j).setZero();
    A(m + 2 * j, j) = 1;
    A.row(m + 2 * j + 1).setZero();
    A(m + 2 * j + 1, j) = -1;
    b(m + 2 * j) = b(m + 2 * j + 1) = 1.5;
  }
  return ConvexBody::hpolytope(A, b);
}

struct OracleEstimate {
  double value;
  double std_error;
};

// Membership counting over the axis box [-R, R]^k of section coordinates
// around the foot point of the flat, R the body's bounding radius. Shares
// nothing with the exact section code beyond contains().
inline OracleEstimate oracle_section_volume(const ConvexBody& body, const Eigen::MatrixXd& U,
                                            const Eigen::VectorXd& y, std::uint64_t points,
                                            RandomStream& s) {
  const int k = static_cast<int>(U.cols());
  const auto& bb = body.bounding_ball();
  const Eigen::VectorXd t0 = U.transpose() * (bb.center - y);
  const double R = bb.radius;
  std::uint64_t inside = 0;
  Eigen::VectorXd t(k);
  for (std::uint64_t i = 0; i < points; ++i) {
    for (int j = 0; j < k; ++j) t(j) = t0(j) + R * (2 * s.uniform() - 1);
    if (body.contains(U * t + y)) ++inside;
  }
  const double box = std::pow(2 * R, k);
  const double frac = static_cast<double>(inside) / static_cast<double>(points);
  return {box * frac, box * std::sqrt(frac * (1 - frac) / static_cast<double>(points))};
}

}  // namespace sectionlab::testing
