#include "sectionlab/bodies.hpp"

#include <cmath>
#include <sstream>

#include "sectionlab/errors.hpp"
#include "sectionlab/lp.hpp"
#include "sectionlab/math_kernel.hpp"
#include "sectionlab/polytope.hpp"

namespace sectionlab {

namespace {

constexpr double kMembershipSlack = 1e-12;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_dimension(int d) {
  if (d < 1 || d > kMaxDimension) {
    throw DomainError("body dimension must lie in [1, " + std::to_string(kMaxDimension) + "]");
  }
}

void check_vector(const Eigen::VectorXd& x, int d, const char* what) {
  if (x.size() != d) {
    std::ostringstream os;
    os << what << ": expected a " << d << "-vector, got size " << x.size();
    throw DimensionMismatch(os.str());
  }
}

HalfSpaces normalize_rows(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  HalfSpaces out{Eigen::MatrixXd(A.rows(), A.cols()), Eigen::VectorXd(A.rows())};
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double norm = A.row(i).norm();
    if (norm < 1e-14) {
      if (b(i) < 0.0) throw InvalidBody("hpolytope: a zero row with negative offset is empty");
      continue;
    }
    out.A.row(kept) = A.row(i) / norm;
    out.b(kept) = b(i) / norm;
    ++kept;
  }
  out.A.conservativeResize(kept, A.cols());
  out.b.conservativeResize(kept);
  return out;
}

bool halfspace_contains(const HalfSpaces& h, const Eigen::VectorXd& x) {
  return ((h.A * x - h.b).array() <= kMembershipSlack).all();
}

HalfSpaces simplex_halfspaces(const Eigen::MatrixXd& vertices) {
  const Eigen::Index d = vertices.rows();
  const Eigen::VectorXd v0 = vertices.col(0);
  const Eigen::MatrixXd edges = vertices.rightCols(d).colwise() - v0;
  const Eigen::MatrixXd inv = edges.inverse();
  // barycentric lambda = inv (x - v0): lambda_i >= 0 and sum lambda_i <= 1
  Eigen::MatrixXd A(d + 1, d);
  Eigen::VectorXd b(d + 1);
  A.topRows(d) = -inv;
  b.head(d) = -inv * v0;
  A.row(d) = inv.colwise().sum();
  b(d) = 1.0 + A.row(d).dot(v0);
  return normalize_rows(A, b);
}

void check_orthonormal(const Eigen::MatrixXd& basis, const char* what) {
  const Eigen::Index k = basis.cols();
  const double defect =
      k == 0 ? 0.0
             : (basis.transpose() * basis - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(defect <= kOrthonormalityTolerance)) {
    throw DomainError(std::string(what) + ": basis columns are not orthonormal");
  }
}

double section_volume_impl(const ConvexBody& body, const Eigen::MatrixXd& U,
                           const Eigen::VectorXd& y) {
  const int d = body.dimension();
  const int k = static_cast<int>(U.cols());
  if (U.rows() != d || y.size() != d) {
    throw DimensionMismatch("section volume: flat and body dimensions differ");
  }
  if (k == d) return body.exact_volume();

  return std::visit(
      [&](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const Eigen::VectorXd v = shape.center - y;
          const Eigen::VectorXd t0 = U.transpose() * v;
          const double dist2 = std::max(0.0, v.squaredNorm() - t0.squaredNorm());
          const double h = shape.radius * shape.radius - dist2;
          if (h <= 0.0) return 0.0;
          return kappa(k) * std::pow(h, 0.5 * k);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          const Eigen::VectorXd v = shape.center - y;
          const Eigen::MatrixXd MU = shape.shape * U;
          const Eigen::MatrixXd A = U.transpose() * MU;
          const Eigen::VectorXd g = MU.transpose() * v;
          const Eigen::LLT<Eigen::MatrixXd> llt(A);
          const double minval = v.dot(shape.shape * v) - g.dot(llt.solve(g));
          const double h = 1.0 - minval;
          if (h <= 0.0) return 0.0;
          const double sqrt_det = llt.matrixL().toDenseMatrix().diagonal().prod();
          return kappa(k) * std::pow(h, 0.5 * k) / sqrt_det;
        } else {
          if (k > kMaxExactPolytopeSection) {
            throw UnsupportedExactSection("exact polytope sections are limited to k <= " +
                                          std::to_string(kMaxExactPolytopeSection));
          }
          const HalfSpaces& h = *body.halfspaces();
          return polytope::volume(h.A * U, h.b - h.A * y);
        }
      },
      body.shape());
}

}  // namespace

const char* to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::Ball: return "ball";
    case BodyKind::Ellipsoid: return "ellipsoid";
    case BodyKind::Box: return "box";
    case BodyKind::Simplex: return "simplex";
    case BodyKind::HPolytope: return "hpolytope";
  }
  return "unknown";
}

ConvexBody::ConvexBody(Variant shape, int dimension)
    : shape_(std::move(shape)), dimension_(dimension) {
  finish();
}

ConvexBody ConvexBody::ball(const Eigen::VectorXd& center, double radius) {
  const int d = static_cast<int>(center.size());
  check_dimension(d);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidBody("ball: radius must be positive");
  return ConvexBody(Ball{center, radius}, d);
}

ConvexBody ConvexBody::unit_ball(int d) {
  check_dimension(d);
  return ball(Eigen::VectorXd::Zero(d), 1.0);
}

ConvexBody ConvexBody::ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape) {
  const int d = static_cast<int>(center.size());
  check_dimension(d);
  if (shape.rows() != d || shape.cols() != d) {
    throw DimensionMismatch("ellipsoid: shape matrix must be d x d");
  }
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + shape.cwiseAbs().maxCoeff())) {
    throw InvalidBody("ellipsoid: shape matrix must be symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (shape + shape.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw InvalidBody("ellipsoid: shape matrix is not positive definite");
  }
  Ellipsoid e;
  e.center = center;
  e.shape = sym;
  e.cholesky_lower = llt.matrixL();
  const Eigen::MatrixXd linv =
      e.cholesky_lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));
  e.ball_map = linv.transpose();
  e.inverse_shape = e.ball_map * linv;
  return ConvexBody(std::move(e), d);
}

ConvexBody ConvexBody::ellipsoid_axes(const Eigen::VectorXd& center, const Eigen::VectorXd& axes) {
  check_vector(axes, static_cast<int>(center.size()), "ellipsoid axes");
  if (!(axes.array() > 0.0).all()) throw InvalidBody("ellipsoid: semi-axes must be positive");
  return ellipsoid(center, axes.array().square().inverse().matrix().asDiagonal());
}

ConvexBody ConvexBody::box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  const int d = static_cast<int>(lower.size());
  check_dimension(d);
  check_vector(upper, d, "box upper corner");
  if (!(lower.array() < upper.array()).all()) {
    throw InvalidBody("box: lower must be strictly below upper in every coordinate");
  }
  return ConvexBody(Box{lower, upper}, d);
}

ConvexBody ConvexBody::cube(int d, double half_width) {
  check_dimension(d);
  return box(Eigen::VectorXd::Constant(d, -half_width), Eigen::VectorXd::Constant(d, half_width));
}

ConvexBody ConvexBody::simplex(const Eigen::MatrixXd& vertices) {
  const int d = static_cast<int>(vertices.rows());
  check_dimension(d);
  if (vertices.cols() != d + 1) throw DimensionMismatch("simplex: need d+1 vertices");
  const double vol = gram_volume_affine(vertices);
  const Eigen::MatrixXd edges = vertices.rightCols(d).colwise() - vertices.col(0);
  const double scale = std::pow(edges.colwise().norm().maxCoeff(), d) / factorial(d);
  if (!(vol > 1e-12 * scale)) throw InvalidBody("simplex: vertices are affinely dependent");
  return ConvexBody(Simplex{vertices}, d);
}

ConvexBody ConvexBody::standard_simplex(int d) {
  check_dimension(d);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d + 1);
  v.rightCols(d).setIdentity();
  return simplex(v);
}

ConvexBody ConvexBody::hpolytope(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int d = static_cast<int>(A.cols());
  check_dimension(d);
  if (A.rows() != b.size()) throw DimensionMismatch("hpolytope: A and b row counts differ");
  const HalfSpaces h = normalize_rows(A, b);

  lp::Constraints cons{h.A, h.b, Eigen::MatrixXd(0, d), Eigen::VectorXd(0)};
  HPolytope poly{h.A, h.b, Eigen::VectorXd(d), Eigen::VectorXd(d)};
  for (int i = 0; i < d; ++i) {
    for (const double sign : {1.0, -1.0}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
      c(i) = sign;
      const auto res = lp::maximize(c, cons);
      if (res.status == lp::Status::Infeasible) throw InvalidBody("hpolytope: empty set");
      if (res.status == lp::Status::Unbounded) {
        throw UnboundedPolytope("hpolytope: unbounded in coordinate " + std::to_string(i));
      }
      if (sign > 0) poly.box_upper(i) = res.objective;
      else poly.box_lower(i) = -res.objective;
    }
  }
  // Chebyshev ball: maximize r subject to a_i x + r <= b_i (unit rows)
  Eigen::MatrixXd cheb_A(h.A.rows(), d + 1);
  cheb_A << h.A, Eigen::VectorXd::Ones(h.A.rows());
  Eigen::VectorXd objective = Eigen::VectorXd::Zero(d + 1);
  objective(d) = 1.0;
  const auto cheb = lp::maximize(objective, {cheb_A, h.b, Eigen::MatrixXd(0, d + 1), Eigen::VectorXd(0)});
  if (cheb.status != lp::Status::Optimal || cheb.objective <= 1e-12) {
    throw InvalidBody("hpolytope: empty interior");
  }
  return ConvexBody(std::move(poly), d);
}

void ConvexBody::finish() {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        const int d = dimension_;
        if constexpr (std::is_same_v<T, Ball>) {
          bounding_ = {s.center, s.radius};
          volume_ = kappa(d) * std::pow(s.radius, d);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.shape, Eigen::EigenvaluesOnly);
          bounding_ = {s.center, 1.0 / std::sqrt(eig.eigenvalues().minCoeff())};
          volume_ = kappa(d) / s.cholesky_lower.diagonal().prod();
        } else if constexpr (std::is_same_v<T, Box>) {
          bounding_ = {0.5 * (s.lower + s.upper), 0.5 * (s.upper - s.lower).norm()};
          volume_ = (s.upper - s.lower).prod();
          Eigen::MatrixXd A(2 * d, d);
          A << Eigen::MatrixXd::Identity(d, d), -Eigen::MatrixXd::Identity(d, d);
          Eigen::VectorXd b(2 * d);
          b << s.upper, -s.lower;
          halfspaces_ = HalfSpaces{A, b};
        } else if constexpr (std::is_same_v<T, Simplex>) {
          const Eigen::VectorXd centroid = s.vertices.rowwise().mean();
          bounding_ = {centroid, (s.vertices.colwise() - centroid).colwise().norm().maxCoeff()};
          volume_ = gram_volume_affine(s.vertices);
          halfspaces_ = simplex_halfspaces(s.vertices);
        } else {
          bounding_ = {0.5 * (s.box_lower + s.box_upper), 0.5 * (s.box_upper - s.box_lower).norm()};
          halfspaces_ = HalfSpaces{s.A, s.b};
          if (d <= polytope::kMaxExactDimension) volume_ = polytope::volume(s.A, s.b);
        }
      },
      shape_);
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os << to_string(kind()) << "(d=" << dimension_;
  if (const auto* b = std::get_if<Ball>(&shape_)) os << ", r=" << b->radius;
  if (const auto* h = std::get_if<HPolytope>(&shape_)) os << ", m=" << h->A.rows();
  os << ")";
  return os.str();
}

bool ConvexBody::contains(const Eigen::VectorXd& x) const {
  check_vector(x, dimension_, "contains");
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return (x - s.center).squaredNorm() <= s.radius * s.radius * (1.0 + kMembershipSlack);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          const Eigen::VectorXd v = x - s.center;
          return v.dot(s.shape * v) <= 1.0 + kMembershipSlack;
        } else if constexpr (std::is_same_v<T, Box>) {
          return (x.array() >= s.lower.array()).all() && (x.array() <= s.upper.array()).all();
        } else {
          return halfspace_contains(*halfspaces_, x);
        }
      },
      shape_);
}

double ConvexBody::exact_volume() const {
  if (!volume_) {
    throw UnsupportedExactVolume("exact volume of a general H-polytope needs d <= " +
                                 std::to_string(polytope::kMaxExactDimension));
  }
  return *volume_;
}

ConvexBody ConvexBody::rotated(const Eigen::MatrixXd& R) const {
  const int d = dimension_;
  if (R.rows() != d || R.cols() != d) throw DimensionMismatch("rotation must be d x d");
  check_orthonormal(R, "rotation");
  return std::visit(
      [&](const auto& s) -> ConvexBody {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return ball(R * s.center, s.radius);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          const Eigen::MatrixXd m = R * s.shape * R.transpose();
          return ellipsoid(R * s.center, 0.5 * (m + m.transpose()));
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return simplex(R * s.vertices);
        } else {
          const HalfSpaces& h = *halfspaces_;
          return hpolytope(h.A * R.transpose(), h.b);
        }
      },
      shape_);
}

ConvexBody ConvexBody::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  return std::visit(
      [&](const auto& s) -> ConvexBody {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return ball(factor * s.center, factor * s.radius);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return ellipsoid(factor * s.center, s.shape / (factor * factor));
        } else if constexpr (std::is_same_v<T, Box>) {
          return box(factor * s.lower, factor * s.upper);
        } else if constexpr (std::is_same_v<T, Simplex>) {
          return simplex(factor * s.vertices);
        } else {
          return hpolytope(s.A, factor * s.b);
        }
      },
      shape_);
}

LinearSubspace::LinearSubspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw DomainError("linear subspace: need 1 <= k <= d basis columns");
  }
  check_orthonormal(basis_, "linear subspace");
}

AffineFlat::AffineFlat(Eigen::MatrixXd basis, Eigen::VectorXd offset)
    : basis_(std::move(basis)), offset_(std::move(offset)) {
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw DomainError("affine flat: need 1 <= k <= d basis columns");
  }
  if (offset_.size() != basis_.rows()) throw DimensionMismatch("affine flat: offset size");
  check_orthonormal(basis_, "affine flat");
  if ((basis_.transpose() * offset_).norm() > kOrthonormalityTolerance * (1.0 + offset_.norm())) {
    throw DomainError("affine flat: offset must be orthogonal to the basis");
  }
}

bool contains(const ConvexBody& body, const Eigen::VectorXd& x) { return body.contains(x); }

double exact_volume(const ConvexBody& body) { return body.exact_volume(); }

double gram_volume_origin(const Eigen::MatrixXd& points) {
  const Eigen::Index k = points.cols();
  if (k == 0) return 1.0;
  if (k > points.rows()) return 0.0;
  const Eigen::MatrixXd gram = points.transpose() * points;
  const double det = std::max(0.0, gram.determinant());
  return std::sqrt(det) / factorial(static_cast<int>(k));
}

double gram_volume_affine(const Eigen::MatrixXd& points) {
  if (points.cols() < 1) throw DomainError("gram_volume_affine needs at least one point");
  const Eigen::MatrixXd edges = points.rightCols(points.cols() - 1).colwise() - points.col(0);
  return gram_volume_origin(edges);
}

double section_volume_linear(const ConvexBody& body, const LinearSubspace& subspace) {
  return section_volume_impl(body, subspace.basis(),
                             Eigen::VectorXd::Zero(subspace.ambient_dimension()));
}

double section_volume_affine(const ConvexBody& body, const AffineFlat& flat) {
  return section_volume_impl(body, flat.basis(), flat.offset());
}

bool projection_membership(const ConvexBody& body, const Eigen::MatrixXd& W,
                           const Eigen::VectorXd& y) {
  if (W.rows() != body.dimension() || y.size() != W.cols()) {
    throw DimensionMismatch("projection_membership: W must be d x (d-k) and y a (d-k)-vector");
  }
  check_orthonormal(W, "projection_membership");
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const Eigen::VectorXd z = y - W.transpose() * s.center;
          return z.squaredNorm() <= s.radius * s.radius * (1.0 + kMembershipSlack);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          // the projection W^T K is an ellipsoid with inverse shape W^T M^{-1} W
          const Eigen::VectorXd z = y - W.transpose() * s.center;
          const Eigen::MatrixXd proj = W.transpose() * s.inverse_shape * W;
          return z.dot(proj.llt().solve(z)) <= 1.0 + kMembershipSlack;
        } else {
          const HalfSpaces& h = *body.halfspaces();
          return lp::is_feasible({h.A, h.b, W.transpose(), y});
        }
      },
      body.shape());
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis) {
  const Eigen::Index d = basis.rows();
  const Eigen::Index k = basis.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  return q.rightCols(d - k);
}

SectionDisk section_bounding_disk(const ConvexBody& body, const Eigen::MatrixXd& basis,
                                  const Eigen::VectorXd& offset) {
  const BoundingBall& bb = body.bounding_ball();
  const Eigen::VectorXd v = bb.center - offset;
  SectionDisk disk;
  disk.center = basis.transpose() * v;
  const double dist2 = std::max(0.0, v.squaredNorm() - disk.center.squaredNorm());
  const double r2 = bb.radius * bb.radius - dist2;
  disk.radius = r2 >= 0.0 ? std::sqrt(r2) : -1.0;
  return disk;
}

}  // namespace sectionlab
