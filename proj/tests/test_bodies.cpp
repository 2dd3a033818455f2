#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sectionlab/bodies.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/math_kernel.hpp"
#include "sectionlab/sampling.hpp"
#include "support.hpp"

using namespace sectionlab;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;
using std::numbers::pi;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(xs.size());
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

MatrixXd cols(std::initializer_list<VectorXd> vs) {
  MatrixXd m(vs.begin()->size(), vs.size());
  int j = 0;
  for (const auto& v : vs) m.col(j++) = v;
  return m;
}

}  // namespace

TEST_CASE("membership") {
  CHECK(ConvexBody::unit_ball(3).contains(vec({0.5, 0, 0})));
  CHECK(ConvexBody::unit_ball(3).contains(vec({1, 0, 0})));
  CHECK_FALSE(ConvexBody::cube(3, 1).contains(vec({1.01, 0, 0})));
  CHECK(ConvexBody::cube(3, 1).contains(vec({1, -1, 1})));
  CHECK(ConvexBody::ellipsoid_axes(VectorXd::Zero(2), vec({1, 2})).contains(vec({0, 1.9})));
  CHECK_FALSE(ConvexBody::ellipsoid_axes(VectorXd::Zero(2), vec({1, 2})).contains(vec({0.9, 1.9})));
  CHECK(ConvexBody::standard_simplex(3).contains(vec({0.2, 0.3, 0.5})));
  CHECK_FALSE(ConvexBody::standard_simplex(3).contains(vec({0.2, 0.3, 0.51})));
  CHECK_THROWS_AS(ConvexBody::unit_ball(3).contains(vec({0, 0})), DimensionMismatch);
}

TEST_CASE("exact volumes") {
  CHECK(exact_volume(ConvexBody::unit_ball(3)) == doctest::Approx(4 * pi / 3));
  CHECK(exact_volume(ConvexBody::ellipsoid_axes(VectorXd::Zero(3), vec({1, 2, 3}))) ==
        doctest::Approx(8 * pi).epsilon(1e-12));
  CHECK(exact_volume(ConvexBody::cube(3, 1)) == doctest::Approx(8.0));
  CHECK(exact_volume(ConvexBody::standard_simplex(3)) == doctest::Approx(1.0 / 6));
  CHECK(exact_volume(ConvexBody::ball(VectorXd::Zero(2), 2.0)) == doctest::Approx(4 * pi));
  RandomStream s(3, 0);
  for (int d = 2; d <= 5; ++d) {
    VectorXd axes(d);
    for (int i = 0; i < d; ++i) axes(i) = 0.3 + s.uniform();
    const double expected = kappa(d) * axes.prod();
    CHECK(std::abs(exact_volume(ConvexBody::ellipsoid_axes(VectorXd::Zero(d), axes)) - expected) <=
          1e-12 * expected);
  }
  // H-polytope cube equals the box
  MatrixXd A(6, 3);
  A << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  CHECK(ConvexBody::hpolytope(A, VectorXd::Ones(6)).exact_volume() == doctest::Approx(8.0));
}

TEST_CASE("invalid bodies") {
  CHECK_THROWS_AS(ConvexBody::ball(VectorXd::Zero(2), -1), InvalidBody);
  CHECK_THROWS_AS(ConvexBody::box(vec({0, 0}), vec({1, 0})), InvalidBody);
  CHECK_THROWS_AS(ConvexBody::simplex(cols({vec({0, 0}), vec({1, 1}), vec({2, 2})})), InvalidBody);
  MatrixXd bad(2, 2);
  bad << 1, 0, 0, -1;
  CHECK_THROWS_AS(ConvexBody::ellipsoid(VectorXd::Zero(2), bad), InvalidBody);
  MatrixXd half(1, 2);
  half << 1, 0;
  CHECK_THROWS_AS(ConvexBody::hpolytope(half, VectorXd::Ones(1)), UnboundedPolytope);
  MatrixXd flat(4, 2);
  flat << 1, 0, -1, 0, 0, 1, 0, -1;
  CHECK_THROWS_AS(ConvexBody::hpolytope(flat, vec({1, 1, 0, 0})), InvalidBody);
}

TEST_CASE("gram volumes") {
  CHECK(gram_volume_origin(cols({vec({1, 0, 0}), vec({0, 1, 0})})) == doctest::Approx(0.5));
  CHECK(gram_volume_origin(cols({vec({3, 4})})) == doctest::Approx(5.0));
  CHECK(gram_volume_origin(cols({vec({1, 2, 3}), vec({2, 4, 6})})) == 0.0);
  const MatrixXd tri = cols({vec({0, 0}), vec({1, 0}), vec({0, 1})});
  CHECK(gram_volume_affine(tri) == doctest::Approx(0.5));
  CHECK(gram_volume_affine(tri.colwise() + vec({7, -3})) == doctest::Approx(0.5));
  CHECK(gram_volume_affine(cols({vec({1, 1, 1}), vec({2, 2, 2})})) == doctest::Approx(std::sqrt(3.0)));

  RandomStream s(5, 0);
  MatrixXd pts(4, 3);
  for (int i = 0; i < pts.size(); ++i) pts(i) = s.normal();
  const double v = gram_volume_affine(pts);
  MatrixXd perm = pts;
  perm.col(0).swap(perm.col(2));
  CHECK(gram_volume_affine(perm) == doctest::Approx(v).epsilon(1e-12));
  CHECK(gram_volume_origin(2.0 * pts) == doctest::Approx(std::pow(2.0, 3) * gram_volume_origin(pts)));
}

TEST_CASE("section volume examples") {
  RandomStream s(11, 0);
  const LinearSubspace L = sample_grassmannian(3, 2, s);
  CHECK(section_volume_linear(ConvexBody::unit_ball(3), L) == doctest::Approx(pi));

  const double r = std::sqrt(0.5);
  const LinearSubspace diag(cols({vec({r, r})}));
  CHECK(section_volume_linear(ConvexBody::cube(2, 1), diag) ==
        doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));

  const LinearSubspace e12(cols({vec({1, 0, 0}), vec({0, 1, 0})}));
  CHECK(section_volume_linear(ConvexBody::ellipsoid_axes(VectorXd::Zero(3), vec({1, 2, 3})), e12) ==
        doctest::Approx(2 * pi).epsilon(1e-12));

  const AffineFlat line(cols({vec({1, 0})}), vec({0, 0.6}));
  CHECK(section_volume_affine(ConvexBody::unit_ball(2), line) == doctest::Approx(1.6));
  const AffineFlat far(cols({vec({1, 0, 0}), vec({0, 1, 0})}), vec({0, 0, 2}));
  CHECK(section_volume_affine(ConvexBody::unit_ball(3), far) == 0.0);
  const AffineFlat z05(cols({vec({1, 0, 0}), vec({0, 1, 0})}), vec({0, 0, 0.5}));
  CHECK(section_volume_affine(ConvexBody::cube(3, 1), z05) == doctest::Approx(4.0));
  CHECK(section_volume_affine(ConvexBody::standard_simplex(3), z05) == doctest::Approx(0.125));
}

TEST_CASE("flat validation") {
  CHECK_THROWS_AS(LinearSubspace(cols({vec({1, 0.1})})), DomainError);
  CHECK_THROWS_AS(AffineFlat(cols({vec({1, 0})}), vec({0.5, 1})), DomainError);
}

TEST_CASE("polytope sections beyond k = 3 are not exact") {
  RandomStream s(2, 0);
  const LinearSubspace L = sample_grassmannian(5, 4, s);
  CHECK_THROWS_AS(section_volume_linear(ConvexBody::cube(5, 1), L), UnsupportedExactSection);
  CHECK_NOTHROW(section_volume_linear(ConvexBody::unit_ball(5), L));
}

TEST_CASE("reparametrization and rotation invariance") {
  RandomStream s(17, 0);
  const ConvexBody bodies[] = {ConvexBody::cube(3, 1), ConvexBody::standard_simplex(3),
                               testing::random_ellipsoid(3, s), testing::random_hpolytope(3, 10, s)};
  for (const auto& body : bodies) {
    for (int trial = 0; trial < 5; ++trial) {
      const LinearSubspace L = sample_grassmannian(3, 2, s);
      const double v = section_volume_linear(body, L);
      const MatrixXd Q = testing::random_rotation(2, s);
      CHECK(std::abs(section_volume_linear(body, LinearSubspace(L.basis() * Q)) - v) <= 1e-9 * v);
      const MatrixXd R = testing::random_rotation(3, s);
      const ConvexBody rb = body.rotated(R);
      CHECK(std::abs(section_volume_linear(rb, LinearSubspace(R * L.basis())) - v) <= 1e-9 * v);
    }
  }
}

TEST_CASE("projection membership") {
  RandomStream s(23, 0);
  const LinearSubspace L = sample_grassmannian(3, 1, s);
  const MatrixXd W = orthogonal_complement(L.basis());
  CHECK((W.transpose() * W - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((W.transpose() * L.basis()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(projection_membership(ConvexBody::unit_ball(3), W, vec({0.9, 0})));
  CHECK_FALSE(projection_membership(ConvexBody::unit_ball(3), W, vec({0, 1.1})));
  CHECK(projection_membership(ConvexBody::cube(3, 1), W, vec({0, 0})));
  CHECK_FALSE(projection_membership(ConvexBody::cube(3, 1), W, vec({1.8, 0})));
  // membership agrees with a nonzero section for the polytope
  const ConvexBody cube = ConvexBody::cube(3, 1);
  for (int i = 0; i < 200; ++i) {
    const LinearSubspace P = sample_grassmannian(3, 2, s);
    const MatrixXd C = orthogonal_complement(P.basis());
    const VectorXd y = vec({2 * (2 * s.uniform() - 1)});
    const double v = section_volume_affine(cube, AffineFlat(P.basis(), C * y));
    if (v > 1e-9) CHECK(projection_membership(cube, C, y));
    if (!projection_membership(cube, C, y)) CHECK(v == 0.0);
  }
}

TEST_CASE("scaling") {
  const ConvexBody b = ConvexBody::standard_simplex(3).scaled(2.0);
  CHECK(b.exact_volume() == doctest::Approx(8.0 / 6));
}
