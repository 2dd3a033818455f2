#include "sectionlab/math_kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sectionlab/errors.hpp"

namespace sectionlab {

namespace {

constexpr double kLogPi = 1.1447298858494002;  // ln(pi)

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

MomentParams::MomentParams(int d, int k, double p) : d_(d), k_(k), p_(p) {
  if (d < 1 || d > kMaxDimension) {
    throw DomainError("dimension d must lie in [1, " + std::to_string(kMaxDimension) +
                      "], got " + std::to_string(d));
  }
  if (k < 1 || k > d) {
    throw DomainError("k must satisfy 1 <= k <= d, got k=" + std::to_string(k) +
                      " d=" + std::to_string(d));
  }
  if (!std::isfinite(p) || p < min_p(d, k)) {
    throw DomainError("moment exponent p must be >= -d+k+1 = " +
                      std::to_string(min_p(d, k)));
  }
}

double log_gamma(double x) {
  require(x > 0.0 && std::isfinite(x), "log_gamma requires x > 0");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
#else
  return std::lgamma(x);
#endif
}

double log_kappa(double p) {
  require(p >= 0.0 && std::isfinite(p), "kappa requires p >= 0");
  return 0.5 * p * kLogPi - log_gamma(0.5 * p + 1.0);
}

double kappa(double p) { return std::exp(log_kappa(p)); }

double gen_binomial(double q, int k) {
  require(k >= 0, "gen_binomial requires k >= 0");
  double value = 1.0;
  for (int j = 0; j < k; ++j) {
    value *= (q - j) / static_cast<double>(j + 1);
  }
  return value;
}

double log_b_coeff(double q, int k) {
  require(k >= 0 && q >= k, "b_coeff requires q >= k >= 0");
  double log_value = 0.0;
  // falling factorial q (q-1) ... (q-k+1) / k!, every factor positive for q >= k
  for (int j = 0; j < k; ++j) {
    log_value += std::log((q - j) / static_cast<double>(j + 1));
  }
  for (int i = 1; i <= k; ++i) {
    log_value += log_kappa(q - k + i) - log_kappa(i);
  }
  return log_value;
}

double b_coeff(double q, int k) { return std::exp(log_b_coeff(q, k)); }

double log_factorial(int n) {
  require(n >= 0, "factorial of a negative integer");
  return log_gamma(n + 1.0);
}

double binomial(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, "binomial requires 0 <= k <= n");
  double value = 1.0;
  for (int j = 1; j <= k; ++j) value = value * (n - k + j) / j;
  return value;
}

double thm1_constant(const MomentParams& params) {
  const int d = params.d();
  const int k = params.k();
  const double p = params.p();
  const double q = d + p;
  const double log_c = p * log_factorial(k) + q * log_kappa(k) - k * log_kappa(q) +
                       log_b_coeff(q, k) - log_b_coeff(d, k);
  return std::exp(log_c);
}

double thm2_constant(const MomentParams& params) {
  const int d = params.d();
  const int k = params.k();
  const double p = params.p();
  const double q = d + p;
  const double log_c = p * log_factorial(k) + (q + 1.0) * log_kappa(k) -
                       (k + 1.0) * log_kappa(q) + log_kappa((k + 1.0) * q) -
                       log_kappa(k * q + k) + log_b_coeff(q, k) - log_b_coeff(d, k);
  return std::exp(log_c);
}

double affine_probabilistic_constant(const MomentParams& params) {
  const int d = params.d();
  const int k = params.k();
  const double p = params.p();
  if (k >= d) throw DomainError("the probabilistic affine constant requires k < d");
  const double q = d + p;
  const double log_c = log_factorial(d) + (p - 1.0) * log_factorial(k) -
                       log_factorial(d - k) + log_kappa(d) - log_kappa(d - k) +
                       q * log_kappa(k) - (k + 1.0) * log_kappa(q) +
                       log_kappa((k + 1.0) * q) - log_kappa(k * q + k) +
                       log_b_coeff(q, k) - log_b_coeff(d, k);
  return std::exp(log_c);
}

ProbabilisticConstants prob_constants(const MomentParams& params) {
  return {thm1_constant(params), affine_probabilistic_constant(params)};
}

double crofton_factor(int d, int k) {
  require(1 <= k && k < d, "crofton_factor requires 1 <= k < d");
  return binomial(d, k) * std::exp(log_kappa(d) - log_kappa(k) - log_kappa(d - k));
}

double linear_identity_constant(int d, double p) {
  require(d >= 1 && p >= -d + 2.0, "identity constants require p >= -d+2");
  const double q = d + p;
  return q * std::exp(q * std::numbers::ln2 - std::log(static_cast<double>(d)) - log_kappa(d));
}

AffineIdentityConstants affine_identity_constants(int d, double p) {
  require(d >= 1 && p >= -d + 2.0, "identity constants require p >= -d+2");
  const double q = d + p;
  const double doubled = q * (q + 1.0) / (d * kappa(d));
  return {0.5 * doubled, doubled};
}

std::pair<double, double> identity_constants(int d, double p, IdentityFamily family) {
  if (family == IdentityFamily::Linear) {
    const double c = linear_identity_constant(d, p);
    return {c, c};
  }
  const auto a = affine_identity_constants(d, p);
  return {a.printed, a.doubled};
}

double busemann_intersection_constant(int d, int k) {
  return std::exp(d * log_kappa(k) - k * log_kappa(d));
}

double schneider_constant(int d, int k) {
  return std::exp((d + 1.0) * log_kappa(k) + log_kappa(d * (k + 1.0)) -
                  (k + 1.0) * log_kappa(d) - log_kappa(k * (d + 1.0)));
}

double busemann_random_simplex_constant(int d, double p) {
  const double q = d + p;
  return std::exp(p * log_factorial(d) + q * log_kappa(d) - d * log_kappa(q) +
                  log_b_coeff(q, d));
}

double blaschke_groemer_constant(int d, double p) {
  const double q = d + p;
  return std::exp(p * log_factorial(d) + log_b_coeff(q, d) + (q + 1.0) * log_kappa(d) -
                  (d + 1.0) * log_kappa(q) + log_kappa((d + 1.0) * q) -
                  log_kappa(d * (q + 1.0)));
}

}  // namespace sectionlab
