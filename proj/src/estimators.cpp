#include "sectionlab/estimators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sectionlab/errors.hpp"
#include "sectionlab/sampling.hpp"

namespace sectionlab {

namespace {

constexpr int kStallRetries = 16;

struct TheoremName {
  TheoremId id;
  const char* name;
};

constexpr TheoremName kTheoremNames[] = {
    {TheoremId::Thm1, "thm1"},
    {TheoremId::Thm2, "thm2"},
    {TheoremId::Busemann, "busemann"},
    {TheoremId::Schneider, "schneider"},
    {TheoremId::BusemannSimplex, "busemann-simplex"},
    {TheoremId::BlaschkeGroemer, "blaschke-groemer"},
    {TheoremId::IdentityLinear, "identity-linear"},
    {TheoremId::IdentityAffine, "identity-affine"},
    {TheoremId::BpLinear, "bp-linear"},
    {TheoremId::BpAffine, "bp-affine"},
};

struct VerdictName {
  Verdict v;
  const char* name;
};

constexpr VerdictName kVerdictNames[] = {
    {Verdict::EqualityWithinTolerance, "EqualityWithinTolerance"},
    {Verdict::StrictInequality, "StrictInequality"},
    {Verdict::Violation, "Violation"},
    {Verdict::Inconclusive, "Inconclusive"},
};

void check_body(const ConvexBody& body, const MomentParams& params) {
  if (body.dimension() != params.d()) {
    std::ostringstream os;
    os << "body dimension " << body.dimension() << " does not match d=" << params.d();
    throw DimensionMismatch(os.str());
  }
}

void require_section_support(const ConvexBody& body, int k, const RunOptions& opts) {
  if (body.is_polytope() && k > kMaxExactPolytopeSection && opts.mc_section_points == 0) {
    throw UnsupportedExactSection(
        "polytope sections with k > 3 need the membership-counting fallback "
        "(set mc_section_points)");
  }
}

double section_volume(const ConvexBody& body, const Eigen::MatrixXd& basis,
                      const Eigen::VectorXd& offset, const RunOptions& opts,
                      RandomStream& stream) {
  if (body.is_polytope() && basis.cols() > kMaxExactPolytopeSection &&
      basis.cols() < body.dimension()) {
    return mc_section_volume(body, basis, offset, opts.mc_section_points, stream);
  }
  return std::visit(
      [&](const auto&) {
        return basis.cols() == 0 ? 0.0 : section_volume_affine(body, AffineFlat(basis, offset));
      },
      body.shape());
}

Eigen::MatrixXd sample_points(const ConvexBody& body, int count, RandomStream& stream) {
  Eigen::MatrixXd pts(body.dimension(), count);
  for (int j = 0; j < count; ++j) pts.col(j) = sample_uniform_in_body(body, stream);
  return pts;
}

// Fills ratio, its error, and the verdict; the heavy-tail guard applies to
// negative moment exponents.
void finalize(InequalityReport& r, double eq_tol) {
  if (!(r.rhs.mean > 0.0)) {
    throw DomainError("right-hand side estimate is not positive; cannot form a ratio");
  }
  r.ratio = r.lhs.mean / r.rhs.mean;
  r.ratio_std_error = ratio_std_error(r.lhs, r.rhs);
  r.verdict = classify(r.ratio, r.ratio_std_error, eq_tol);
  if (r.p < 0.0) {
    r.warnings.push_back("negative moment exponent: integrand may be heavy-tailed");
    const double share = std::max(r.lhs.top_share, r.rhs.top_share);
    if (share > kHeavyTailShare) {
      std::ostringstream os;
      os << "heavy tail: top " << kTopCount << " samples carry " << share
         << " of the sum; verdict withheld";
      r.warnings.push_back(os.str());
      r.verdict = Verdict::Inconclusive;
    }
  }
}

InequalityReport make_report(TheoremId id, const ConvexBody& body, int d, int k, double p) {
  InequalityReport r;
  r.theorem = id;
  r.d = d;
  r.k = k;
  r.p = p;
  r.body = body.describe();
  return r;
}

InequalityReport linear_report(TheoremId id, const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts, double constant, double eq_tol) {
  check_body(body, params);
  const int d = params.d();
  const int k = params.k();
  const double p = params.p();
  InequalityReport r = make_report(id, body, d, k, p);
  const double vol = body.exact_volume();
  r.lhs = k < d ? estimate_lhs_linear(body, params, opts)
                : MCEstimate::exact_value(std::pow(vol, d + p));
  r.rhs = simplex_moment_origin(body, k, p, opts.n, role_seed(opts.seed, Role::Rhs), opts.workers)
              .scaled(constant * std::pow(vol, k));
  r.constant = constant;
  finalize(r, eq_tol);
  return r;
}

InequalityReport affine_report(TheoremId id, const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts, double constant, double eq_tol) {
  check_body(body, params);
  const int d = params.d();
  const int k = params.k();
  const double p = params.p();
  InequalityReport r = make_report(id, body, d, k, p);
  const double vol = body.exact_volume();
  r.lhs = k < d ? estimate_lhs_affine(body, params, opts)
                : MCEstimate::exact_value(std::pow(vol, d + p + 1.0));
  r.rhs = simplex_moment_affine(body, k, p, opts.n, role_seed(opts.seed, Role::Rhs), opts.workers)
              .scaled(constant * std::pow(vol, k + 1));
  r.constant = constant;
  finalize(r, eq_tol);
  return r;
}

void require_config(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

const char* to_string(TheoremId id) {
  for (const auto& t : kTheoremNames) {
    if (t.id == id) return t.name;
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  for (const auto& t : kVerdictNames) {
    if (t.v == v) return t.name;
  }
  return "unknown";
}

std::optional<TheoremId> parse_theorem(const std::string& name) {
  for (const auto& t : kTheoremNames) {
    if (name == t.name) return t.id;
  }
  return std::nullopt;
}

std::optional<Verdict> parse_verdict(const std::string& name) {
  for (const auto& t : kVerdictNames) {
    if (name == t.name) return t.v;
  }
  return std::nullopt;
}

Verdict classify(double ratio, double sigma, double eq_tol) {
  if (!std::isfinite(ratio) || !std::isfinite(sigma)) return Verdict::Inconclusive;
  if (ratio > 1.0 + kStrictSigmas * sigma + eq_tol) return Verdict::Violation;
  if (std::abs(ratio - 1.0) <= std::max(eq_tol, kEqualitySigmas * sigma)) {
    return Verdict::EqualityWithinTolerance;
  }
  if (ratio < 1.0 - kStrictSigmas * sigma - eq_tol) return Verdict::StrictInequality;
  return Verdict::Inconclusive;
}

double ratio_std_error(const MCEstimate& a, const MCEstimate& b) {
  const double r = a.mean / b.mean;
  const double ra = a.mean != 0.0 ? a.std_error / a.mean : 0.0;
  const double rb = b.mean != 0.0 ? b.std_error / b.mean : 0.0;
  return std::abs(r) * std::sqrt(ra * ra + rb * rb);
}

std::uint64_t role_seed(std::uint64_t seed, Role role) {
  return mix_seed(seed, static_cast<std::uint64_t>(role));
}

MCEstimate estimate_lhs_linear(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts) {
  check_body(body, params);
  const int d = params.d();
  const int k = params.k();
  if (k >= d) throw DomainError("estimate_lhs_linear requires k < d; use the exact volume for k = d");
  require_section_support(body, k, opts);
  const double exponent = d + params.p();
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(d);
  return mc_mean(
      [&](RandomStream& s, std::uint64_t) {
        const LinearSubspace L = sample_grassmannian(d, k, s);
        return std::pow(section_volume(body, L.basis(), origin, opts, s), exponent);
      },
      opts.n, role_seed(opts.seed, Role::Lhs), opts.workers);
}

MCEstimate estimate_rhs_linear(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts) {
  check_body(body, params);
  const double constant = thm1_constant(params) * std::pow(body.exact_volume(), params.k());
  return simplex_moment_origin(body, params.k(), params.p(), opts.n,
                               role_seed(opts.seed, Role::Rhs), opts.workers)
      .scaled(constant);
}

MCEstimate estimate_lhs_affine(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts) {
  check_body(body, params);
  const int d = params.d();
  const int k = params.k();
  if (k >= d) throw DomainError("estimate_lhs_affine requires k < d; use the exact volume for k = d");
  require_section_support(body, k, opts);
  const double exponent = d + params.p() + 1.0;
  return mc_mean(
      [&](RandomStream& s, std::uint64_t) {
        const WeightedFlat wf = sample_affine_flat(body, k, s);
        if (!wf.hit) return 0.0;
        const double v = section_volume(body, wf.flat.basis(), wf.flat.offset(), opts, s);
        return wf.weight * std::pow(v, exponent);
      },
      opts.n, role_seed(opts.seed, Role::Lhs), opts.workers);
}

MCEstimate estimate_rhs_affine(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts) {
  check_body(body, params);
  const double constant = thm2_constant(params) * std::pow(body.exact_volume(), params.k() + 1);
  return simplex_moment_affine(body, params.k(), params.p(), opts.n,
                               role_seed(opts.seed, Role::Rhs), opts.workers)
      .scaled(constant);
}

MCEstimate simplex_moment_origin(const ConvexBody& body, int k, double p, std::uint64_t n,
                                 std::uint64_t seed, int workers) {
  if (p == 0.0) return MCEstimate::exact_value(1.0);
  return mc_mean(
      [&](RandomStream& s, std::uint64_t) {
        return std::pow(gram_volume_origin(sample_points(body, k, s)), p);
      },
      n, seed, workers);
}

MCEstimate simplex_moment_affine(const ConvexBody& body, int k, double p, std::uint64_t n,
                                 std::uint64_t seed, int workers) {
  if (p == 0.0) return MCEstimate::exact_value(1.0);
  return mc_mean(
      [&](RandomStream& s, std::uint64_t) {
        return std::pow(gram_volume_affine(sample_points(body, k + 1, s)), p);
      },
      n, seed, workers);
}

InequalityReport verify(TheoremId theorem, const ConvexBody& body, const MomentParams& params,
                        const RunOptions& opts, double eq_tol) {
  const int d = params.d();
  const int k = params.k();
  const double p = params.p();
  switch (theorem) {
    case TheoremId::Thm1:
      return linear_report(theorem, body, params, opts, thm1_constant(params), eq_tol);
    case TheoremId::Busemann:
      require_config(p == 0.0 && k < d, "busemann requires p = 0 and k < d");
      return linear_report(theorem, body, params, opts, busemann_intersection_constant(d, k), eq_tol);
    case TheoremId::BusemannSimplex:
      require_config(k == d && p >= 1.0, "busemann-simplex requires k = d and p >= 1");
      return linear_report(theorem, body, params, opts, busemann_random_simplex_constant(d, p),
                           eq_tol);
    case TheoremId::Thm2:
      return affine_report(theorem, body, params, opts, thm2_constant(params), eq_tol);
    case TheoremId::Schneider:
      require_config(p == 0.0 && k < d, "schneider requires p = 0 and k < d");
      return affine_report(theorem, body, params, opts, schneider_constant(d, k), eq_tol);
    case TheoremId::BlaschkeGroemer:
      require_config(k == d && p >= 1.0, "blaschke-groemer requires k = d and p >= 1");
      return affine_report(theorem, body, params, opts, blaschke_groemer_constant(d, p), eq_tol);
    case TheoremId::IdentityLinear:
    case TheoremId::IdentityAffine:
      require_config(k == 1, "identity checks are k = 1 statements");
      check_body(body, params);
      return identity_check(theorem == TheoremId::IdentityLinear ? IdentityFamily::Linear
                                                                 : IdentityFamily::Affine,
                            body, p, opts, eq_tol);
    case TheoremId::BpLinear:
    case TheoremId::BpAffine:
      check_body(body, params);
      return bp_check(theorem == TheoremId::BpLinear ? BpKind::Linear : BpKind::Affine, body, k,
                      p, opts, eq_tol);
  }
  throw ConfigError("unknown theorem id");
}

InequalityReport identity_check(IdentityFamily family, const ConvexBody& body, double p,
                                const RunOptions& opts, double eq_tol) {
  const int d = body.dimension();
  require_config(d >= 2, "identity checks need d >= 2");
  const MomentParams params(d, 1, p);
  const double vol = body.exact_volume();

  if (family == IdentityFamily::Linear) {
    InequalityReport r = make_report(TheoremId::IdentityLinear, body, d, 1, p);
    r.constant = linear_identity_constant(d, p);
    r.lhs = estimate_lhs_linear(body, params, opts);
    r.rhs = simplex_moment_origin(body, 1, p, opts.n, role_seed(opts.seed, Role::Rhs), opts.workers)
                .scaled(r.constant * vol);
    finalize(r, eq_tol);
    return r;
  }

  InequalityReport r = make_report(TheoremId::IdentityAffine, body, d, 1, p);
  const AffineIdentityConstants c = affine_identity_constants(d, p);
  r.constant = c.doubled;
  r.lhs = estimate_lhs_affine(body, params, opts);
  const MCEstimate pair_integral =
      simplex_moment_affine(body, 1, p, opts.n, role_seed(opts.seed, Role::Rhs), opts.workers)
          .scaled(vol * vol);
  r.rhs = pair_integral.scaled(c.doubled);
  finalize(r, eq_tol);

  Adjudication adj;
  adj.fitted_constant = r.lhs.mean / pair_integral.mean;
  adj.fitted_std_error = ratio_std_error(r.lhs, pair_integral);
  adj.printed_constant = c.printed;
  adj.doubled_constant = c.doubled;
  const auto z = [&](double candidate) {
    const double diff = std::abs(adj.fitted_constant - candidate);
    if (adj.fitted_std_error > 0.0) return diff / adj.fitted_std_error;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  const auto consistent = [&](double candidate) {
    return std::abs(adj.fitted_constant / candidate - 1.0) <=
           std::max(eq_tol, kEqualitySigmas * adj.fitted_std_error / candidate);
  };
  adj.printed_z = z(c.printed);
  adj.doubled_z = z(c.doubled);
  adj.printed_consistent = consistent(c.printed);
  adj.doubled_consistent = consistent(c.doubled);
  adj.consistent = adj.printed_consistent
                       ? (adj.doubled_consistent ? "both" : "printed")
                       : (adj.doubled_consistent ? "doubled" : "neither");
  r.adjudication = adj;
  return r;
}

InequalityReport bp_check(BpKind kind, const ConvexBody& body, int k, double p,
                          const RunOptions& opts, double eq_tol) {
  const int d = body.dimension();
  require_config(k >= 1 && k < d, "bp_check requires 1 <= k <= d-1");
  require_config(p >= 0.0, "bp_check requires p >= 0");
  require_config(opts.n_inner >= 1, "bp_check requires n_inner >= 1");
  require_section_support(body, k, opts);
  const bool linear = kind == BpKind::Linear;
  InequalityReport r =
      make_report(linear ? TheoremId::BpLinear : TheoremId::BpAffine, body, d, k, p);
  const double vol = body.exact_volume();
  const int points = linear ? k : k + 1;

  const MCEstimate moment =
      linear ? simplex_moment_origin(body, k, p, opts.n, role_seed(opts.seed, Role::Lhs), opts.workers)
             : simplex_moment_affine(body, k, p, opts.n, role_seed(opts.seed, Role::Lhs), opts.workers);
  r.lhs = moment.scaled(std::pow(vol, points));

  // (k!)^{d-k} b_{d,k}
  r.constant = std::exp((d - k) * log_factorial(k) + log_b_coeff(d, k));
  const double inner_exponent = p + d - k;
  const std::uint64_t outer_seed = role_seed(opts.seed, Role::Rhs);

  // One outer sample: section weight times the inner mean of the Jacobian-
  // weighted simplex volume over points uniform in the section.
  const auto outer = [&](RandomStream& s) -> double {
    Eigen::MatrixXd basis;
    Eigen::VectorXd offset;
    double weight = 1.0;
    if (linear) {
      basis = sample_grassmannian(d, k, s).basis();
      offset = Eigen::VectorXd::Zero(d);
    } else {
      const WeightedFlat wf = sample_affine_flat(body, k, s);
      if (!wf.hit) return 0.0;
      basis = wf.flat.basis();
      offset = wf.flat.offset();
      weight = wf.weight;
    }
    const double section = section_volume(body, basis, offset, opts, s);
    if (section <= 0.0) return 0.0;
    const SectionDisk disk = section_bounding_disk(body, basis, offset);
    RejectionStats stats;
    double inner_sum = 0.0;
    Eigen::MatrixXd tuple(k, points);
    for (std::uint64_t j = 0; j < opts.n_inner; ++j) {
      for (int c = 0; c < points; ++c) {
        tuple.col(c) = sample_uniform_in_section(body, basis, offset, disk, s, stats);
      }
      const double v = linear ? gram_volume_origin(tuple) : gram_volume_affine(tuple);
      inner_sum += std::pow(v, inner_exponent);
    }
    const double inner_mean = inner_sum / static_cast<double>(opts.n_inner);
    return weight * std::pow(section, points) * inner_mean;
  };

  const auto acc = run_chunked<MomentAccumulator>(
      opts.n, outer_seed, opts.workers, [&](MomentAccumulator& a, std::uint64_t i, RandomStream& s) {
        for (int attempt = 0;; ++attempt) {
          try {
            if (attempt == 0) {
              a.add(outer(s));
            } else {
              RandomStream fresh(mix_seed(outer_seed, static_cast<std::uint64_t>(attempt)), i);
              a.add(outer(fresh));
            }
            return;
          } catch (const RejectionStall&) {
            if (attempt + 1 >= kStallRetries) throw;
          }
        }
      });
  r.rhs = acc.estimate(outer_seed).scaled(r.constant);
  finalize(r, eq_tol);
  return r;
}

MCEstimate crofton_intrinsic(const ConvexBody& body, int k, const RunOptions& opts) {
  const int d = body.dimension();
  if (k < 1 || k >= d) throw DomainError("crofton_intrinsic requires 1 <= k <= d-1");
  const double factor = crofton_factor(d, k);
  return mc_mean(
             [&](RandomStream& s, std::uint64_t) {
               const WeightedFlat wf = sample_affine_flat(body, k, s);
               return wf.hit ? wf.weight : 0.0;
             },
             opts.n, role_seed(opts.seed, Role::Crofton), opts.workers)
      .scaled(factor);
}

InequalityReport verify_probabilistic(TheoremId theorem, const ConvexBody& body,
                                      const MomentParams& params, const RunOptions& opts,
                                      double eq_tol) {
  if (theorem == TheoremId::Thm1 || theorem == TheoremId::Busemann) {
    // nu is a probability measure, so the probabilistic form is the same estimate
    return verify(theorem, body, params, opts, eq_tol);
  }
  require_config(theorem == TheoremId::Thm2 || theorem == TheoremId::Schneider,
                 "verify_probabilistic supports thm1, busemann, thm2, and schneider");
  check_body(body, params);
  const int d = params.d();
  const int k = params.k();
  const double p = params.p();
  require_config(k < d, "the probabilistic affine form requires k < d");
  if (theorem == TheoremId::Schneider) require_config(p == 0.0, "schneider requires p = 0");
  require_section_support(body, k, opts);

  InequalityReport r = make_report(theorem, body, d, k, p);
  const double exponent = d + p + 1.0;
  r.lhs = mc_ratio(
      [&](RandomStream& s, std::uint64_t) -> std::pair<double, double> {
        const WeightedFlat wf = sample_affine_flat(body, k, s);
        if (!wf.hit) return {0.0, 0.0};
        const double v = section_volume(body, wf.flat.basis(), wf.flat.offset(), opts, s);
        return {wf.weight * std::pow(v, exponent), wf.weight};
      },
      opts.n, role_seed(opts.seed, Role::Lhs), opts.workers);

  const MCEstimate intrinsic = crofton_intrinsic(body, k, opts);
  const MCEstimate moment =
      simplex_moment_affine(body, k, p, opts.n, role_seed(opts.seed, Role::Rhs), opts.workers);
  r.constant = affine_probabilistic_constant(params);
  const double vol = body.exact_volume();
  const double scale = r.constant * std::pow(vol, k + 1);
  r.rhs = moment.scaled(scale / intrinsic.mean);
  {
    const double rel_m = moment.mean != 0.0 ? moment.std_error / moment.mean : 0.0;
    const double rel_v = intrinsic.std_error / intrinsic.mean;
    r.rhs.std_error = r.rhs.mean * std::sqrt(rel_m * rel_m + rel_v * rel_v);
  }
  finalize(r, eq_tol);
  if (intrinsic.std_error > kCroftonRelativeSE * intrinsic.mean) {
    r.warnings.push_back("intrinsic volume estimate has relative standard error above 1%");
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

}  // namespace sectionlab
