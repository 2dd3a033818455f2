#pragma once

// Closed-form constants of the section-moment and random-simplex inequalities,
// together with the special functions they need. Every product of kappa and
// Gamma values is accumulated in log space and exponentiated once.

#include <utility>

namespace sectionlab {

inline constexpr int kMaxDimension = 12;

// (d, k, p): ambient dimension, section/simplex dimension, moment exponent.
// Construction enforces 1 <= k <= d <= 12 and p >= -d + k + 1.
class MomentParams {
 public:
  MomentParams(int d, int k, double p);

  int d() const noexcept { return d_; }
  int k() const noexcept { return k_; }
  double p() const noexcept { return p_; }

  // Smallest admissible moment exponent for (d, k).
  static double min_p(int d, int k) noexcept { return -d + k + 1.0; }

 private:
  int d_;
  int k_;
  double p_;
};

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Volume of the unit ball of (possibly fractional) dimension p >= 0.
double kappa(double p);
double log_kappa(double p);

// q (q-1) ... (q-k+1) / k!, falling-factorial form, valid for any real q.
double gen_binomial(double q, int k);

// b_{q,k} = C(q,k) * kappa_{q-k+1} ... kappa_q / (kappa_1 ... kappa_k), q >= k.
double b_coeff(double q, int k);
double log_b_coeff(double q, int k);

// Linear section-moment constant:
//   (k!)^p kappa_k^{d+p} / kappa_{d+p}^k * b_{d+p,k} / b_{d,k}
double thm1_constant(const MomentParams& params);

// Affine section-moment constant:
//   (k!)^p kappa_k^{p+d+1} / kappa_{d+p}^{k+1}
//     * kappa_{(k+1)(d+p)} / kappa_{k(d+p)+k} * b_{d+p,k} / b_{d,k}
double thm2_constant(const MomentParams& params);

// Constant C' of the probabilistic affine form, with |K|^{k+1} / V_{d-k}(K)
// in place of |K|^{k+1}. Requires k < d.
double affine_probabilistic_constant(const MomentParams& params);

struct ProbabilisticConstants {
  double linear;  // equals thm1_constant
  double affine;  // C'
};
ProbabilisticConstants prob_constants(const MomentParams& params);

// Crofton normalization binom(d,k) kappa_d / (kappa_k kappa_{d-k}), so that
// V_{d-k}(K) = crofton_factor * mu({E : E meets K}).
double crofton_factor(int d, int k);

// k = 1 chord-power identity constants.
double linear_identity_constant(int d, double p);  // (d+p) 2^{d+p} / (d kappa_d)

struct AffineIdentityConstants {
  double printed;  // (d+p)(d+p+1) / (2 d kappa_d)
  double doubled;  // (d+p)(d+p+1) / (d kappa_d), the k = 1 value of thm2_constant
};
AffineIdentityConstants affine_identity_constants(int d, double p);

enum class IdentityFamily { Linear, Affine };
// Linear: the single constant. Affine: the printed value and its double.
std::pair<double, double> identity_constants(int d, double p, IdentityFamily family);

// Classical special cases, written from their own formulas.
double busemann_intersection_constant(int d, int k);           // kappa_k^d / kappa_d^k
double schneider_constant(int d, int k);                       // kappa_k^{d+1} kappa_{d(k+1)} / (kappa_d^{k+1} kappa_{k(d+1)})
double busemann_random_simplex_constant(int d, double p);      // (d!)^p kappa_d^{p+d} / kappa_{d+p}^d b_{d+p,d}
double blaschke_groemer_constant(int d, double p);             // (d!)^p b_{d+p,d} kappa_d^{p+d+1} / kappa_{d+p}^{d+1} * kappa_{(d+1)(d+p)} / kappa_{d(d+p+1)}

double log_factorial(int n);
double binomial(int n, int k);

}  // namespace sectionlab
