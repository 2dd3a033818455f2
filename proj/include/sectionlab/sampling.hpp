#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sectionlab/bodies.hpp"
#include "sectionlab/random.hpp"

namespace sectionlab {

// Rejection samplers stall when fewer than 1 in 10^4 proposals is accepted
// over a window of 10^5 proposals.
inline constexpr std::uint64_t kStallWindow = 100000;
inline constexpr double kStallAcceptance = 1e-4;

struct RejectionStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;

  double acceptance_rate() const noexcept {
    return proposals == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
  // Throws RejectionStall once a full window has been seen at too low a rate.
  void check(const char* where) const;
};

// Uniform point in the unit ball of R^d: Gaussian direction times U^{1/d}.
Eigen::VectorXd sample_unit_ball(int d, RandomStream& stream);

// Exact for ball, ellipsoid (affine image of the ball draw), box, and simplex
// (Dirichlet weights from exponential spacings); rejection from the bounding
// box for an H-polytope.
Eigen::VectorXd sample_uniform_in_body(const ConvexBody& body, RandomStream& stream,
                                       RejectionStats* stats = nullptr);

// Haar-distributed element of G_{d,k}: orthonormalized Gaussian d x k matrix.
LinearSubspace sample_grassmannian(int d, int k, RandomStream& stream);

// A flat E = L + W y with L Haar and y uniform in the (d-k)-ball of radius R
// around W^T c, (c, R) the body's bounding ball. For bounded f,
//   E[weight * hit * f(E)] = integral of f over flats meeting K
// with respect to the rigid-motion-invariant measure that gives the flats
// meeting the unit ball mass kappa_{d-k}.
struct WeightedFlat {
  AffineFlat flat;
  Eigen::MatrixXd complement;  // W, orthonormal basis of L-perp
  Eigen::VectorXd coordinates; // y, so that the offset is W y
  double weight = 0.0;         // kappa_{d-k} R^{d-k}
  bool hit = false;
};

WeightedFlat sample_affine_flat(const ConvexBody& body, int k, RandomStream& stream);

// Uniform point (in section coordinates t) of K intersected with {U t + y},
// by rejection from the section's bounding disk.
Eigen::VectorXd sample_uniform_in_section(const ConvexBody& body, const Eigen::MatrixXd& basis,
                                          const Eigen::VectorXd& offset, const SectionDisk& disk,
                                          RandomStream& stream, RejectionStats& stats);

// Membership-counting estimate of |K cap {U t + y}|, the fallback for
// polytope sections beyond the exact range.
double mc_section_volume(const ConvexBody& body, const Eigen::MatrixXd& basis,
                         const Eigen::VectorXd& offset, std::uint64_t points,
                         RandomStream& stream);

}  // namespace sectionlab
