#include "sectionlab/mc.hpp"

namespace sectionlab {

MCEstimate MCEstimate::scaled(double factor) const {
  MCEstimate out = *this;
  out.mean *= factor;
  out.std_error *= std::abs(factor);
  out.min *= factor;
  out.max *= factor;
  if (factor < 0.0) std::swap(out.min, out.max);
  return out;
}

void MomentAccumulator::push_top(double a) noexcept {
  if (top_count_ == kTopCount && a <= top_[kTopCount - 1]) return;
  int pos = top_count_ < kTopCount ? top_count_++ : kTopCount - 1;
  while (pos > 0 && top_[pos - 1] < a) {
    top_[pos] = top_[pos - 1];
    --pos;
  }
  top_[pos] = a;
}

void MomentAccumulator::add(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
  min_ = std::min(min_, x);
  max_ = std::max(max_, x);
  abs_sum_ += std::abs(x);
  push_top(std::abs(x));
}

void MomentAccumulator::merge(const MomentAccumulator& o) noexcept {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  n_ += o.n_;
  min_ = std::min(min_, o.min_);
  max_ = std::max(max_, o.max_);
  abs_sum_ += o.abs_sum_;
  for (int i = 0; i < o.top_count_; ++i) push_top(o.top_[i]);
}

double MomentAccumulator::variance() const noexcept {
  return n_ < 2 ? 0.0 : std::max(0.0, m2_) / static_cast<double>(n_ - 1);
}

MCEstimate MomentAccumulator::estimate(std::uint64_t seed) const {
  MCEstimate e;
  e.mean = mean_;
  e.n = n_;
  e.seed = seed;
  e.std_error = n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
  e.min = n_ ? min_ : 0.0;
  e.max = n_ ? max_ : 0.0;
  double top = 0.0;
  for (int i = 0; i < top_count_; ++i) top += top_[i];
  e.top_share = abs_sum_ > 0.0 ? top / abs_sum_ : 0.0;
  return e;
}

void PairAccumulator::add(double a, double b) noexcept {
  ++n_;
  const double n = static_cast<double>(n_);
  const double da = a - mean_a_;
  const double db = b - mean_b_;
  mean_a_ += da / n;
  mean_b_ += db / n;
  m2_a_ += da * (a - mean_a_);
  m2_b_ += db * (b - mean_b_);
  c_ab_ += da * (b - mean_b_);
  a_.add(a);
}

void PairAccumulator::merge(const PairAccumulator& o) noexcept {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double da = o.mean_a_ - mean_a_;
  const double db = o.mean_b_ - mean_b_;
  mean_a_ += da * nb / n;
  mean_b_ += db * nb / n;
  m2_a_ += o.m2_a_ + da * da * na * nb / n;
  m2_b_ += o.m2_b_ + db * db * na * nb / n;
  c_ab_ += o.c_ab_ + da * db * na * nb / n;
  n_ += o.n_;
  a_.merge(o.a_);
}

double PairAccumulator::var_a() const noexcept {
  return n_ < 2 ? 0.0 : m2_a_ / static_cast<double>(n_ - 1);
}
double PairAccumulator::var_b() const noexcept {
  return n_ < 2 ? 0.0 : m2_b_ / static_cast<double>(n_ - 1);
}
double PairAccumulator::cov() const noexcept {
  return n_ < 2 ? 0.0 : c_ab_ / static_cast<double>(n_ - 1);
}

MCEstimate PairAccumulator::ratio(std::uint64_t seed) const {
  MCEstimate e = a_.estimate(seed);
  if (mean_b_ == 0.0) {
    e.mean = std::numeric_limits<double>::quiet_NaN();
    e.std_error = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  const double r = mean_a_ / mean_b_;
  const double resid_var = std::max(0.0, var_a() - 2.0 * r * cov() + r * r * var_b());
  e.mean = r;
  e.std_error = n_ < 2 ? 0.0 : std::sqrt(resid_var / static_cast<double>(n_)) / std::abs(mean_b_);
  return e;
}

int resolve_workers(int workers) noexcept {
  return workers > 0 ? workers : omp_get_max_threads();
}

}  // namespace sectionlab
