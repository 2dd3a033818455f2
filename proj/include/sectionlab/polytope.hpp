#pragma once

// Exact geometry of small H-polytopes { t : A t <= b } in R^k, k <= 4.

#include <Eigen/Dense>
#include <vector>

namespace sectionlab::polytope {

inline constexpr double kVertexTolerance = 1e-9;
inline constexpr int kMaxRows = 64;
inline constexpr int kMaxExactDimension = 4;

// Certified by maximizing +-e_i with the simplex solver.
bool is_bounded(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// All vertices, deduplicated in the max norm at 1e-9. Throws UnboundedPolytope
// when the set is unbounded and DomainError beyond m <= 64, k <= 4.
std::vector<Eigen::VectorXd> vertex_enumeration(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& b);

// Same enumeration without the size and boundedness checks; for callers that
// already know the polytope is a bounded section of a bounded body.
std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& A,
                                                const Eigen::VectorXd& b);

// k-dimensional volume of a bounded H-polytope, summing pyramids from a point
// of the polytope over every facet and recursing on the facets. Empty or
// lower-dimensional sets give 0.
double volume(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace sectionlab::polytope
