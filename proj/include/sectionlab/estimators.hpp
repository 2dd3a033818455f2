#pragma once

// Monte Carlo estimates of both sides of the section-moment inequalities and
// identities, and the verdict logic that classifies a run.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sectionlab/bodies.hpp"
#include "sectionlab/math_kernel.hpp"
#include "sectionlab/mc.hpp"

namespace sectionlab {

enum class TheoremId {
  Thm1,              // linear sections vs. simplices with the origin
  Thm2,              // affine sections vs. simplices
  Busemann,          // Thm1 at p = 0
  Schneider,         // Thm2 at p = 0
  BusemannSimplex,   // Thm1 at k = d
  BlaschkeGroemer,   // Thm2 at k = d
  IdentityLinear,    // k = 1 linear chord-power identity
  IdentityAffine,    // k = 1 affine chord-power identity
  BpLinear,          // linear Blaschke-Petkantschin decomposition
  BpAffine,          // affine Blaschke-Petkantschin decomposition
};

enum class Verdict { EqualityWithinTolerance, StrictInequality, Violation, Inconclusive };

const char* to_string(TheoremId id);
const char* to_string(Verdict v);
std::optional<TheoremId> parse_theorem(const std::string& name);
std::optional<Verdict> parse_verdict(const std::string& name);

inline constexpr double kDefaultEqualityTolerance = 0.02;
inline constexpr double kStrictSigmas = 4.0;
inline constexpr double kEqualitySigmas = 3.0;
inline constexpr double kHeavyTailShare = 0.2;
inline constexpr double kCroftonRelativeSE = 0.01;

struct RunOptions {
  std::uint64_t n = 100000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0: OpenMP default
  std::uint64_t n_inner = 1000;
  // Points per membership-counting section estimate for polytope sections
  // with k > 3; 0 disables the fallback.
  std::uint64_t mc_section_points = 0;
};

// Both candidate k = 1 affine constants against the measured one.
struct Adjudication {
  double fitted_constant = 0.0;
  double fitted_std_error = 0.0;
  double printed_constant = 0.0;
  double doubled_constant = 0.0;
  double printed_z = 0.0;
  double doubled_z = 0.0;
  bool printed_consistent = false;
  bool doubled_consistent = false;
  std::string consistent;  // "printed", "doubled", "both", or "neither"
};

struct InequalityReport {
  TheoremId theorem = TheoremId::Thm1;
  int d = 0;
  int k = 0;
  double p = 0.0;
  std::string body;
  MCEstimate lhs;
  MCEstimate rhs;
  double constant = 0.0;
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> warnings;
  std::optional<Adjudication> adjudication;
};

// Verdict thresholds for a ratio r +- sigma.
Verdict classify(double ratio, double sigma, double eq_tol);

// Delta-method standard error of a / b for independent a and b.
double ratio_std_error(const MCEstimate& a, const MCEstimate& b);

// Seed of an independent role within one run.
enum class Role : std::uint64_t { Lhs = 1, Rhs = 2, Crofton = 3, Denominator = 4 };
std::uint64_t role_seed(std::uint64_t seed, Role role);

// E over Haar L of |K cap L|^{d+p}; requires 1 <= k <= d-1.
MCEstimate estimate_lhs_linear(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts);
// thm1_constant * |K|^k * E |conv(0, X_1..X_k)|^p
MCEstimate estimate_rhs_linear(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts);
// integral over affine flats of |K cap E|^{d+p+1}; requires 1 <= k <= d-1.
MCEstimate estimate_lhs_affine(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts);
// thm2_constant * |K|^{k+1} * E |conv(X_0..X_k)|^p
MCEstimate estimate_rhs_affine(const ConvexBody& body, const MomentParams& params,
                               const RunOptions& opts);

// E |conv(0, X_1..X_k)|^p and E |conv(X_0..X_k)|^p for i.i.d. uniform X_i.
MCEstimate simplex_moment_origin(const ConvexBody& body, int k, double p, std::uint64_t n,
                                 std::uint64_t seed, int workers);
MCEstimate simplex_moment_affine(const ConvexBody& body, int k, double p, std::uint64_t n,
                                 std::uint64_t seed, int workers);

InequalityReport verify(TheoremId theorem, const ConvexBody& body, const MomentParams& params,
                        const RunOptions& opts, double eq_tol = kDefaultEqualityTolerance);

// k = 1 identities. For the affine family the report carries the adjudication
// between the printed constant and its double; the report's own constant is
// the doubled value, which is the k = 1 reduction of thm2_constant.
InequalityReport identity_check(IdentityFamily family, const ConvexBody& body, double p,
                                const RunOptions& opts, double eq_tol = kDefaultEqualityTolerance);

// Blaschke-Petkantschin decomposition with h = V^p * prod 1_K. LHS is the
// direct integral over K^k (K^{k+1}); RHS integrates section-wise with the
// Jacobian V^{d-k}, using opts.n outer and opts.n_inner inner samples.
enum class BpKind { Linear, Affine };
InequalityReport bp_check(BpKind kind, const ConvexBody& body, int k, double p,
                          const RunOptions& opts, double eq_tol = kDefaultEqualityTolerance);

// V_{d-k}(K) = crofton_factor(d, k) * mu(flats meeting K).
MCEstimate crofton_intrinsic(const ConvexBody& body, int k, const RunOptions& opts);

// Probabilistic forms: the conditional section moment over flats meeting K
// against C' |K|^{k+1} / V_{d-k}(K) E V_k^p (Thm2), or the Haar mean form of
// Thm1 (identical to verify).
InequalityReport verify_probabilistic(TheoremId theorem, const ConvexBody& body,
                                      const MomentParams& params, const RunOptions& opts,
                                      double eq_tol = kDefaultEqualityTolerance);

}  // namespace sectionlab
