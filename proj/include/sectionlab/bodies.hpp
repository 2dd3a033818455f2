#pragma once

// Convex bodies with exact volume, membership, and sections by linear
// subspaces and affine flats.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>

namespace sectionlab {

struct BoundingBall {
  Eigen::VectorXd center;
  double radius = 0.0;
};

// Halfspace description A x <= b with unit-norm rows.
struct HalfSpaces {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

struct Ball {
  Eigen::VectorXd center;
  double radius = 1.0;
};

// { x : (x - c)^T M (x - c) <= 1 } with M = L L^T.
struct Ellipsoid {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
  Eigen::MatrixXd cholesky_lower;  // L
  Eigen::MatrixXd inverse_shape;   // M^{-1}
  Eigen::MatrixXd ball_map;        // L^{-T}: maps the unit ball onto the centered ellipsoid
};

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct Simplex {
  Eigen::MatrixXd vertices;  // d x (d+1), one vertex per column
};

struct HPolytope {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd box_lower;  // LP-certified bounding box
  Eigen::VectorXd box_upper;
};

enum class BodyKind { Ball, Ellipsoid, Box, Simplex, HPolytope };

class ConvexBody {
 public:
  using Variant = std::variant<Ball, Ellipsoid, Box, Simplex, HPolytope>;

  static ConvexBody ball(const Eigen::VectorXd& center, double radius);
  static ConvexBody unit_ball(int d);
  static ConvexBody ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape);
  // Axis-aligned ellipsoid with the given semi-axes, M = diag(1/a_i^2).
  static ConvexBody ellipsoid_axes(const Eigen::VectorXd& center, const Eigen::VectorXd& axes);
  static ConvexBody box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);
  static ConvexBody cube(int d, double half_width);
  static ConvexBody simplex(const Eigen::MatrixXd& vertices);
  // conv(0, e_1, ..., e_d)
  static ConvexBody standard_simplex(int d);
  static ConvexBody hpolytope(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

  int dimension() const noexcept { return dimension_; }
  BodyKind kind() const noexcept { return static_cast<BodyKind>(shape_.index()); }
  const Variant& shape() const noexcept { return shape_; }
  const BoundingBall& bounding_ball() const noexcept { return bounding_; }
  // Present for Box, Simplex, and HPolytope.
  const std::optional<HalfSpaces>& halfspaces() const noexcept { return halfspaces_; }
  bool is_polytope() const noexcept { return halfspaces_.has_value(); }
  std::string describe() const;

  bool contains(const Eigen::VectorXd& x) const;
  // Throws UnsupportedExactVolume for an H-polytope of dimension > 4.
  double exact_volume() const;

  // x -> R x for an orthogonal R; a rotated box becomes an H-polytope.
  ConvexBody rotated(const Eigen::MatrixXd& rotation) const;
  ConvexBody scaled(double factor) const;

 private:
  ConvexBody(Variant shape, int dimension);
  void finish();

  Variant shape_;
  int dimension_ = 0;
  BoundingBall bounding_;
  std::optional<HalfSpaces> halfspaces_;
  std::optional<double> volume_;
};

const char* to_string(BodyKind kind);

// Element of G_{d,k}: a d x k matrix with orthonormal columns.
class LinearSubspace {
 public:
  explicit LinearSubspace(Eigen::MatrixXd basis);
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  int ambient_dimension() const noexcept { return static_cast<int>(basis_.rows()); }
  int dimension() const noexcept { return static_cast<int>(basis_.cols()); }

 private:
  Eigen::MatrixXd basis_;
};

// Element of A_{d,k}: { U t + y }, with U^T y = 0.
class AffineFlat {
 public:
  AffineFlat(Eigen::MatrixXd basis, Eigen::VectorXd offset);
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  const Eigen::VectorXd& offset() const noexcept { return offset_; }
  int ambient_dimension() const noexcept { return static_cast<int>(basis_.rows()); }
  int dimension() const noexcept { return static_cast<int>(basis_.cols()); }

 private:
  Eigen::MatrixXd basis_;
  Eigen::VectorXd offset_;
};

inline constexpr double kOrthonormalityTolerance = 1e-10;
inline constexpr int kMaxExactPolytopeSection = 3;

bool contains(const ConvexBody& body, const Eigen::VectorXd& x);
double exact_volume(const ConvexBody& body);

// |conv(0, x_1, ..., x_k)| for the columns of `points`.
double gram_volume_origin(const Eigen::MatrixXd& points);
// |conv(x_0, ..., x_k)| for the columns of `points`.
double gram_volume_affine(const Eigen::MatrixXd& points);

double section_volume_linear(const ConvexBody& body, const LinearSubspace& subspace);
double section_volume_affine(const ConvexBody& body, const AffineFlat& flat);

// True iff some x in the body has W^T x = y.
bool projection_membership(const ConvexBody& body, const Eigen::MatrixXd& complement,
                           const Eigen::VectorXd& y);

// Orthonormal basis of the orthogonal complement of span(basis).
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis);

// Bounding ball of the section {U t + y} as (center t0 in section
// coordinates, radius); radius < 0 when the flat misses the body's bounding
// ball.
struct SectionDisk {
  Eigen::VectorXd center;
  double radius = -1.0;
};
SectionDisk section_bounding_disk(const ConvexBody& body, const Eigen::MatrixXd& basis,
                                  const Eigen::VectorXd& offset);

}  // namespace sectionlab
