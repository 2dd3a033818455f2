#include "sectionlab/sampling.hpp"

#include <cmath>
#include <sstream>

#include "sectionlab/errors.hpp"
#include "sectionlab/math_kernel.hpp"

namespace sectionlab {

void RejectionStats::check(const char* where) const {
  if (proposals >= kStallWindow && acceptance_rate() < kStallAcceptance) {
    std::ostringstream os;
    os << where << ": acceptance " << acceptance_rate() << " over " << proposals
       << " proposals";
    throw RejectionStall(os.str());
  }
}

Eigen::VectorXd sample_unit_ball(int d, RandomStream& stream) {
  Eigen::VectorXd x(d);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < d; ++i) x(i) = stream.normal();
    norm2 = x.squaredNorm();
  } while (norm2 == 0.0);
  const double radius = std::pow(stream.uniform(), 1.0 / d);
  return x * (radius / std::sqrt(norm2));
}

Eigen::VectorXd sample_uniform_in_body(const ConvexBody& body, RandomStream& stream,
                                       RejectionStats* stats) {
  const int d = body.dimension();
  return std::visit(
      [&](const auto& s) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return s.center + s.radius * sample_unit_ball(d, stream);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return s.center + s.ball_map * sample_unit_ball(d, stream);
        } else if constexpr (std::is_same_v<T, Box>) {
          Eigen::VectorXd x(d);
          for (int i = 0; i < d; ++i) x(i) = s.lower(i) + (s.upper(i) - s.lower(i)) * stream.uniform();
          return x;
        } else if constexpr (std::is_same_v<T, Simplex>) {
          Eigen::VectorXd w(d + 1);
          for (int i = 0; i <= d; ++i) w(i) = stream.exponential();
          return s.vertices * (w / w.sum());
        } else {
          RejectionStats local;
          RejectionStats& st = stats ? *stats : local;
          Eigen::VectorXd x(d);
          for (;;) {
            for (int i = 0; i < d; ++i) {
              x(i) = s.box_lower(i) + (s.box_upper(i) - s.box_lower(i)) * stream.uniform();
            }
            ++st.proposals;
            if (body.contains(x)) {
              ++st.accepted;
              return x;
            }
            st.check("hpolytope rejection sampler");
          }
        }
      },
      body.shape());
}

LinearSubspace sample_grassmannian(int d, int k, RandomStream& stream) {
  if (k < 1 || k > d) throw DomainError("sample_grassmannian requires 1 <= k <= d");
  Eigen::MatrixXd q(d, k);
  for (;;) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < d; ++i) q(i, j) = stream.normal();
    }
    bool ok = true;
    // modified Gram-Schmidt with one re-orthogonalization pass
    for (int j = 0; j < k && ok; ++j) {
      const double original = q.col(j).norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
      }
      const double norm = q.col(j).norm();
      if (!(norm > 1e-10 * original)) {
        ok = false;
        break;
      }
      q.col(j) /= norm;
    }
    if (ok) return LinearSubspace(q);
  }
}

WeightedFlat sample_affine_flat(const ConvexBody& body, int k, RandomStream& stream) {
  const int d = body.dimension();
  if (k < 1 || k > d - 1) throw DomainError("sample_affine_flat requires 1 <= k <= d-1");
  LinearSubspace subspace = sample_grassmannian(d, k, stream);
  Eigen::MatrixXd complement = orthogonal_complement(subspace.basis());
  const BoundingBall& bb = body.bounding_ball();
  const int m = d - k;
  Eigen::VectorXd y = complement.transpose() * bb.center + bb.radius * sample_unit_ball(m, stream);
  const bool hit = projection_membership(body, complement, y);
  const double weight = kappa(m) * std::pow(bb.radius, m);
  Eigen::VectorXd offset = complement * y;
  return WeightedFlat{AffineFlat(subspace.basis(), std::move(offset)), std::move(complement),
                      std::move(y), weight, hit};
}

Eigen::VectorXd sample_uniform_in_section(const ConvexBody& body, const Eigen::MatrixXd& basis,
                                          const Eigen::VectorXd& offset, const SectionDisk& disk,
                                          RandomStream& stream, RejectionStats& stats) {
  const int k = static_cast<int>(basis.cols());
  if (disk.radius < 0.0) throw RejectionStall("section sampler: flat misses the bounding ball");
  Eigen::VectorXd x(basis.rows());
  for (;;) {
    const Eigen::VectorXd t = disk.center + disk.radius * sample_unit_ball(k, stream);
    x.noalias() = basis * t;
    x += offset;
    ++stats.proposals;
    if (body.contains(x)) {
      ++stats.accepted;
      return t;
    }
    stats.check("section rejection sampler");
  }
}

double mc_section_volume(const ConvexBody& body, const Eigen::MatrixXd& basis,
                         const Eigen::VectorXd& offset, std::uint64_t points,
                         RandomStream& stream) {
  const int k = static_cast<int>(basis.cols());
  const SectionDisk disk = section_bounding_disk(body, basis, offset);
  if (disk.radius <= 0.0 || points == 0) return 0.0;
  std::uint64_t inside = 0;
  Eigen::VectorXd x(basis.rows());
  for (std::uint64_t i = 0; i < points; ++i) {
    const Eigen::VectorXd t = disk.center + disk.radius * sample_unit_ball(k, stream);
    x.noalias() = basis * t;
    x += offset;
    if (body.contains(x)) ++inside;
  }
  return kappa(k) * std::pow(disk.radius, k) * static_cast<double>(inside) /
         static_cast<double>(points);
}

}  // namespace sectionlab
