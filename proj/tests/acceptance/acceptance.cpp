// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/beta.hpp>

#include "ks.hpp"
#include "sectionlab/estimators.hpp"
#include "sectionlab/math_kernel.hpp"
#include "sectionlab/sampling.hpp"
#include "support.hpp"

using namespace sectionlab;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::numbers::pi;

namespace {

constexpr std::uint64_t kSeed = 1;

// Criterion 4 regression baselines, measured with kSeed at n = 2e5.
constexpr double kBoxBaselineP0 = 0.9769182190625717;
constexpr double kBoxBaselineP1 = 0.92592797272573235;

class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool pass() const { return pass_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool pass_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

RunOptions options(std::uint64_t n, std::uint64_t seed = kSeed) {
  RunOptions o;
  o.n = n;
  o.seed = seed;
  return o;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

double ref_kappa(double p) { return std::pow(pi, p / 2) / std::tgamma(p / 2 + 1); }

double ref_b(double q, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= (q - i) / (i + 1);
  for (int i = 1; i <= k; ++i) v *= ref_kappa(q - k + i) / ref_kappa(i);
  return v;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void runtime(Criterion& c, std::chrono::steady_clock::time_point start, double limit,
             const std::string& label) {
  const double t = elapsed(start);
  c.note(label + fmt(" %.2fs", t));
  c.check(t < limit, label + fmt(" took %.2fs, limit %.0fs", t, limit));
}

std::string report_line(const InequalityReport& r) {
  return std::string(to_string(r.verdict)) + fmt(" r=%.6f sigma=%.2e", r.ratio, r.ratio_std_error);
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void c1_constants(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  int checked = 0;
  const auto expect = [&](double got, double want, const std::string& what) {
    ++checked;
    c.check(rel_close(got, want, 1e-10), what + fmt(": got %.17g want %.17g", got, want));
  };
  for (int d = 2; d <= 10; ++d) {
    for (int k = 1; k < d; ++k) {
      expect(thm1_constant({d, k, 0}), std::pow(ref_kappa(k), d) / std::pow(ref_kappa(d), k),
             "A d=" + std::to_string(d) + " k=" + std::to_string(k));
    }
    for (double p : {-d + 2.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      expect(thm1_constant({d, 1, p}), (d + p) * std::pow(2.0, d + p) / (d * ref_kappa(d)),
             "B d=" + std::to_string(d) + fmt(" p=%g", p));
    }
    for (int k = 1; k < d; ++k) {
      expect(thm2_constant({d, k, 0}),
             std::pow(ref_kappa(k), d + 1) * ref_kappa(d * (k + 1)) /
                 (std::pow(ref_kappa(d), k + 1) * ref_kappa(k * (d + 1))),
             "D/Schneider d=" + std::to_string(d) + " k=" + std::to_string(k));
    }
  }
  for (int d = 1; d <= 10; ++d) {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double fact = std::pow(std::tgamma(d + 1.0), p);
      expect(thm1_constant({d, d, p}),
             fact * std::pow(ref_kappa(d), p + d) / std::pow(ref_kappa(d + p), d) * ref_b(d + p, d),
             "C d=" + std::to_string(d) + fmt(" p=%g", p));
      expect(thm2_constant({d, d, p}),
             fact * ref_b(d + p, d) * std::pow(ref_kappa(d), p + d + 1) /
                 std::pow(ref_kappa(d + p), d + 1) * ref_kappa((d + 1) * (d + p)) /
                 ref_kappa(d * (d + p + 1)),
             "D/Blaschke-Groemer d=" + std::to_string(d) + fmt(" p=%g", p));
    }
  }
  for (double q = 0.5; q <= 20.0; q += 0.5) {
    expect(std::pow(2.0, q + 1) * kappa(2 * q), (q + 1) * kappa(q) * kappa(q + 1),
           fmt("duplication q=%g", q));
  }
  c.note(std::to_string(checked) + " identities; A skips k = d, where p = 0 is outside the admissible range");
  runtime(c, start, 1.0, "runtime");
}

void c2_ball(Criterion& c) {
  struct Case {
    int d, k;
    double p;
  };
  for (const Case& cs : {Case{3, 2, 0}, Case{4, 2, 1}, Case{5, 3, 0}}) {
    const auto start = std::chrono::steady_clock::now();
    const InequalityReport r = verify(TheoremId::Thm1, ConvexBody::unit_ball(cs.d),
                                      MomentParams(cs.d, cs.k, cs.p), options(100000));
    const std::string label = fmt("(d=%g,k=%g,p=%g)", cs.d, cs.k, cs.p);
    c.check(r.lhs.std_error == 0.0, label + " LHS SE is not 0");
    if (cs.p == 0) {
      c.check(r.rhs.exact, label + " RHS not deterministic");
      c.check(std::abs(r.ratio - 1.0) <= 1e-12, label + fmt(" ratio %.17g", r.ratio));
    } else {
      c.check(std::abs(r.ratio - 1.0) <= 3 * r.ratio_std_error,
              label + fmt(" ratio %.6f sigma %.2e", r.ratio, r.ratio_std_error));
    }
    c.check(r.verdict == Verdict::EqualityWithinTolerance, label + " " + report_line(r));
    c.note(label + " " + report_line(r));
    runtime(c, start, 30.0, label);
  }
}

void c3_ellipsoid(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  const ConvexBody e = ConvexBody::ellipsoid_axes(VectorXd::Zero(3), Eigen::Vector3d(1, 2, 3));
  const InequalityReport r = verify(TheoremId::Thm1, e, MomentParams(3, 2, 1), options(200000));
  c.check(r.verdict == Verdict::EqualityWithinTolerance, report_line(r));
  c.check(std::abs(r.ratio - 1.0) <= 0.02, fmt("|ratio - 1| = %.4f", std::abs(r.ratio - 1)));
  c.note(report_line(r));
  runtime(c, start, 60.0, "runtime");
}

void c4_box(Criterion& c) {
  const ConvexBody box = ConvexBody::cube(3, 1);
  for (double p : {0.0, 1.0}) {
    const auto start = std::chrono::steady_clock::now();
    const InequalityReport r = verify(TheoremId::Thm1, box, MomentParams(3, 2, p), options(200000));
    const std::string label = fmt("p=%g", p);
    c.check(r.verdict == Verdict::StrictInequality, label + " " + report_line(r));
    c.check(r.ratio < 1.0 - 4 * r.ratio_std_error, label + " not below 1 by 4 sigma");
    const double baseline = p == 0.0 ? kBoxBaselineP0 : kBoxBaselineP1;
    c.check(rel_close(r.ratio, baseline, 1e-9),
            label + fmt(" ratio %.17g drifted from baseline %.17g", r.ratio, baseline));
    c.note(label + " " + report_line(r) + fmt(" baseline %.17g", baseline));
    runtime(c, start, 60.0, label);
  }
}

void c5_linear_identity(Criterion& c) {
  const InequalityReport box =
      identity_check(IdentityFamily::Linear, ConvexBody::cube(2, 1), 2.0, options(100000));
  c.check(box.verdict == Verdict::EqualityWithinTolerance, "box p=2 " + report_line(box));
  c.note("box p=2 " + report_line(box));
  const InequalityReport ball =
      identity_check(IdentityFamily::Linear, ConvexBody::unit_ball(3), 0.0, options(100000));
  const double expected = 8.0 / ref_kappa(3) * ref_kappa(3);
  c.check(std::abs(ball.lhs.mean - expected) <= 3 * ball.lhs.std_error + 1e-12 * expected,
          fmt("ball LHS %.12g vs %.12g", ball.lhs.mean, expected));
  c.note(fmt("ball d=3 LHS %.12g, (2^d/kappa_d)|K| = %.12g", ball.lhs.mean, expected));
}

void c6_affine(Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  const ConvexBody disk = ConvexBody::unit_ball(2);
  const MCEstimate hit = mc_mean(
      [&](RandomStream& s, std::uint64_t) {
        const WeightedFlat f = sample_affine_flat(disk, 1, s);
        return f.hit ? f.weight : 0.0;
      },
      100000, kSeed);
  c.check(std::abs(hit.mean - 2.0) <= 3 * hit.std_error + 1e-12,
          fmt("hitting measure %.6f +- %.2e", hit.mean, hit.std_error));
  c.note(fmt("mu(lines hitting disk) = %.6f +- %.2e", hit.mean, hit.std_error));

  double quad = 0.0;
  const int m = 1000000;
  for (int i = 0; i < m; ++i) {
    const double t = -1.0 + (i + 0.5) * 2.0 / m;
    quad += std::pow(2 * std::sqrt(1 - t * t), 3) * 2.0 / m;
  }
  c.check(rel_close(quad, 3 * pi, 1e-9), fmt("quadrature %.12g", quad));
  const MCEstimate cube = mc_mean(
      [&](RandomStream& s, std::uint64_t) {
        const WeightedFlat f = sample_affine_flat(disk, 1, s);
        return f.hit ? f.weight * std::pow(section_volume_affine(disk, f.flat), 3) : 0.0;
      },
      100000, kSeed);
  c.check(std::abs(cube.mean - quad) <= 3 * cube.std_error,
          fmt("chord^3 integral %.6f +- %.4f vs %.6f", cube.mean, cube.std_error, quad));
  c.note(fmt("chord^3 integral %.6f +- %.4f, quadrature %.6f", cube.mean, cube.std_error, quad));

  const InequalityReport r = identity_check(IdentityFamily::Affine, disk, 0.0, options(100000));
  const Adjudication& a = *r.adjudication;
  c.check(a.doubled_consistent, "doubled constant not consistent");
  c.check(!a.printed_consistent, "printed constant consistent");
  c.check(a.printed_z > 5.0, fmt("printed z = %.2f", a.printed_z));
  c.note(fmt("fitted %.6f +- %.2e", a.fitted_constant, a.fitted_std_error) +
         fmt(", printed %.6f (z=%.1f)", a.printed_constant, a.printed_z) +
         fmt(", doubled %.6f (z=%.2f)", a.doubled_constant, a.doubled_z));
  runtime(c, start, 60.0, "runtime");
}

void c7_thm2(Criterion& c) {
  const ConvexBody ball = ConvexBody::unit_ball(3);
  for (double p : {0.0, 1.0}) {
    const auto start = std::chrono::steady_clock::now();
    const InequalityReport r = verify(TheoremId::Thm2, ball, MomentParams(3, 2, p), options(200000));
    c.check(r.verdict == Verdict::EqualityWithinTolerance, fmt("ball p=%g ", p) + report_line(r));
    c.note(fmt("ball p=%g ", p) + report_line(r));
    runtime(c, start, 90.0, fmt("ball p=%g", p));
  }
  {
    const auto start = std::chrono::steady_clock::now();
    const InequalityReport r =
        verify(TheoremId::Thm2, ConvexBody::cube(3, 1), MomentParams(3, 2, 1), options(200000));
    c.check(r.verdict == Verdict::StrictInequality, "box p=1 " + report_line(r));
    c.note("box p=1 " + report_line(r));
    runtime(c, start, 90.0, "box p=1");
  }
  {
    const auto start = std::chrono::steady_clock::now();
    const InequalityReport r =
        verify(TheoremId::Schneider, ball, MomentParams(3, 2, 0), options(200000));
    const double c1600 = std::pow(ref_kappa(2), 4) * ref_kappa(9) / (std::pow(ref_kappa(3), 3) * ref_kappa(8));
    c.check(rel_close(r.constant, c1600, 1e-12), fmt("schneider constant %.17g vs %.17g", r.constant, c1600));
    c.check(r.verdict == Verdict::EqualityWithinTolerance, "schneider " + report_line(r));
    c.note(fmt("schneider constant %.12g", r.constant) + ", " + report_line(r));
    runtime(c, start, 90.0, "schneider");
  }
}

void c8_bp(Criterion& c) {
  RunOptions o = options(10000);
  o.n_inner = 1000;
  {
    const auto start = std::chrono::steady_clock::now();
    const InequalityReport r = bp_check(BpKind::Linear, ConvexBody::cube(3, 1), 2, 0.0, o);
    c.check(r.lhs.mean == 64.0, fmt("linear LHS %.17g", r.lhs.mean));
    c.check(r.verdict == Verdict::EqualityWithinTolerance, "linear " + report_line(r));
    c.note("linear box " + report_line(r));
    runtime(c, start, 120.0, "linear");
  }
  {
    const auto start = std::chrono::steady_clock::now();
    const InequalityReport r = bp_check(BpKind::Affine, ConvexBody::unit_ball(2), 1, 0.0, o);
    c.check(rel_close(r.lhs.mean, pi * pi, 1e-14), fmt("affine LHS %.17g", r.lhs.mean));
    c.check(r.verdict == Verdict::EqualityWithinTolerance, "affine " + report_line(r));
    c.note("affine disk " + report_line(r));
    runtime(c, start, 120.0, "affine");
  }
}

void c9_crofton(Criterion& c) {
  struct Case {
    ConvexBody body;
    int k;
    double expected;
    const char* label;
  };
  const Case cases[] = {
      {ConvexBody::unit_ball(3), 2, 4.0, "V1(B3)"},
      {ConvexBody::unit_ball(3), 1, 2 * pi, "V2(B3)"},
      {ConvexBody::box(VectorXd::Zero(3), VectorXd::Ones(3)), 2, 3.0, "V1([0,1]^3)"},
  };
  for (const Case& cs : cases) {
    const MCEstimate e = crofton_intrinsic(cs.body, cs.k, options(100000));
    c.check(std::abs(e.mean - cs.expected) <= 3 * e.std_error + 1e-12 * cs.expected,
            std::string(cs.label) + fmt(" = %.6f +- %.2e vs %.6f", e.mean, e.std_error, cs.expected));
    c.note(std::string(cs.label) + fmt(" = %.6f +- %.2e (exact %.6f)", e.mean, e.std_error, cs.expected));
  }
}

void c10_samplers(Criterion& c) {
  const int n = 10000;
  for (auto [d, k] : {std::pair{3, 1}, {3, 2}, {4, 2}, {5, 2}, {6, 3}}) {
    std::vector<double> proj;
    for (int i = 0; i < n; ++i) {
      RandomStream s = derive_substream(kSeed, i);
      proj.push_back(sample_grassmannian(d, k, s).basis().row(0).squaredNorm());
    }
    const boost::math::beta_distribution<> beta(k / 2.0, (d - k) / 2.0);
    const double D = testing::ks_one_sample(
        proj, [&](double x) { return boost::math::cdf(beta, std::clamp(x, 0.0, 1.0)); });
    const double crit = testing::ks_critical_one(n);
    c.check(D < crit, fmt("KS d=%g k=%g D=%.4f", d, k, D));
    c.note(fmt("KS (%g,%g) D=%.4f", d, k, D) + fmt(" < %.4f", crit));
  }

  using Run = std::function<MCEstimate(int)>;
  const ConvexBody box = ConvexBody::cube(3, 1);
  const ConvexBody simplex = ConvexBody::standard_simplex(3);
  const std::vector<std::pair<std::string, Run>> runs = {
      {"thm1 lhs", [&](int w) {
         RunOptions o = options(20000);
         o.workers = w;
         return estimate_lhs_linear(box, MomentParams(3, 2, 1), o);
       }},
      {"thm2 lhs", [&](int w) {
         RunOptions o = options(20000);
         o.workers = w;
         return estimate_lhs_affine(simplex, MomentParams(3, 1, 1), o);
       }},
      {"simplex moment", [&](int w) { return simplex_moment_affine(simplex, 2, 1.5, 20000, 3, w); }},
      {"crofton", [&](int w) {
         RunOptions o = options(20000);
         o.workers = w;
         return crofton_intrinsic(box, 1, o);
       }},
  };
  bool all = true;
  for (const auto& [name, f] : runs) {
    const MCEstimate a = f(1), b = f(2), e = f(8);
    const bool same = bit_equal(a.mean, b.mean) && bit_equal(a.mean, e.mean) &&
                      bit_equal(a.std_error, b.std_error) && bit_equal(a.std_error, e.std_error) &&
                      bit_equal(a.max, e.max) && bit_equal(a.top_share, e.top_share);
    c.check(same, name + " differs across worker counts");
    all = all && same;
  }
  c.note(all ? "bit-exact for workers 1/2/8 on 4 estimators" : "worker-count dependence found");
}

void c11_sections(Criterion& c) {
  RandomStream s(kSeed, 11);
  int done = 0, worst_index = -1;
  double worst = 0.0;
  while (done < 50) {
    const int d = 2 + done % 3;
    const int kmax = std::min(3, d - 1);
    const int k = 1 + (done / 3) % kmax;
    ConvexBody body = ConvexBody::unit_ball(d);
    switch (done % 5) {
      case 0: body = testing::random_ellipsoid(d, s); break;
      case 1: body = ConvexBody::cube(d, 0.5 + s.uniform()); break;
      case 2: body = ConvexBody::standard_simplex(d).scaled(2.0); break;
      case 3: body = testing::random_hpolytope(d, 8, s); break;
      default: body = ConvexBody::ball(VectorXd::Constant(d, 0.3), 1.2); break;
    }
    const WeightedFlat f = sample_affine_flat(body, k, s);
    if (!f.hit) continue;
    const double exact = section_volume_affine(body, f.flat);
    if (exact <= 0.0) continue;
    const auto zscore = [&](const testing::OracleEstimate& o) {
      return std::abs(exact - o.value) / std::max(o.std_error, 1e-300);
    };
    const testing::OracleEstimate o =
        testing::oracle_section_volume(body, f.flat.basis(), f.flat.offset(), 1000000, s);
    double z = zscore(o);
    if (z > worst) {
      worst = z;
      worst_index = done;
    }
    if (z > 3.0) {
      // one independent confirmation draw; a wrong exact value fails both
      RandomStream fresh(mix_seed(kSeed, 0xc0ff1u), static_cast<std::uint64_t>(done));
      const testing::OracleEstimate again =
          testing::oracle_section_volume(body, f.flat.basis(), f.flat.offset(), 1000000, fresh);
      c.note(fmt("pair %g retested: z %.2f, then %.2f", done, z, zscore(again)));
      z = zscore(again);
    }
    c.check(z <= 3.0, fmt("pair %g: exact %.6g, z = %.2f", done, exact, z));
    ++done;
  }
  c.note(fmt("50 pairs, worst first-draw |exact - oracle| = %.2f oracle SE (pair %g)", worst,
             worst_index));
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* title;
    void (*fn)(Criterion&);
  };
  const Item items[] = {
      {1, "constant reductions A-D and duplication", c1_constants},
      {2, "unit-ball thm1 equalities", c2_ball},
      {3, "ellipsoid (1,2,3) thm1 equality", c3_ellipsoid},
      {4, "Box[-1,1]^3 thm1 strict inequality", c4_box},
      {5, "k=1 linear identity", c5_linear_identity},
      {6, "affine normalization and constant adjudication", c6_affine},
      {7, "thm2 equality, strictness, Schneider constant", c7_thm2},
      {8, "Blaschke-Petkantschin checks", c8_bp},
      {9, "Crofton intrinsic volumes", c9_crofton},
      {10, "sampler distributions and determinism", c10_samplers},
      {11, "exact sections vs membership oracle", c11_sections},
  };
  int failed = 0;
  for (const Item& item : items) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
      item.fn(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    const double t = elapsed(start);
    std::printf("[%s] criterion %d: %s (%.1fs)\n", c.pass() ? "PASS" : "FAIL", item.id, item.title, t);
    for (const auto& n : c.notes()) std::printf("       %s\n", n.c_str());
    for (const auto& f : c.failures()) std::printf("       failed: %s\n", f.c_str());
    std::fflush(stdout);
    failed += c.pass() ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(items)) - failed, std::size(items));
  return failed == 0 ? 0 : 1;
}
