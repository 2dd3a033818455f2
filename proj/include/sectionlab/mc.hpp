#pragma once

// Streaming Monte Carlo means.
//
// Sample i always draws from derive_substream(seed, i). Samples are grouped
// into fixed chunks of kChunkSize indices; each chunk is accumulated serially
// and chunks are merged by a pairwise tree keyed on chunk index. The result is
// therefore bit-identical for any worker count.

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <vector>

#include "sectionlab/errors.hpp"
#include "sectionlab/random.hpp"

namespace sectionlab {

inline constexpr std::uint64_t kChunkSize = 512;
inline constexpr int kTopCount = 10;

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  double min = 0.0;
  double max = 0.0;
  // Fraction of sum |x| carried by the kTopCount largest |x|.
  double top_share = 0.0;
  // Closed-form value: no sampling took place.
  bool exact = false;

  static MCEstimate exact_value(double value) {
    MCEstimate e;
    e.mean = e.min = e.max = value;
    e.exact = true;
    return e;
  }
  MCEstimate scaled(double factor) const;
};

// Welford mean/variance with Chan's merge, plus range and the largest |x|.
class MomentAccumulator {
 public:
  void add(double x) noexcept;
  void merge(const MomentAccumulator& other) noexcept;

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept;  // sample variance, n - 1 denominator
  MCEstimate estimate(std::uint64_t seed) const;

 private:
  void push_top(double a) noexcept;

  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
  double abs_sum_ = 0.0;
  std::array<double, kTopCount> top_{};  // descending
  int top_count_ = 0;
};

// Joint moments of (a, b) for ratio-of-means estimates.
class PairAccumulator {
 public:
  void add(double a, double b) noexcept;
  void merge(const PairAccumulator& other) noexcept;

  std::uint64_t count() const noexcept { return n_; }
  double mean_a() const noexcept { return mean_a_; }
  double mean_b() const noexcept { return mean_b_; }
  double var_a() const noexcept;
  double var_b() const noexcept;
  double cov() const noexcept;

  // mean_a / mean_b with the linearized standard error
  // sqrt(var(a - R b) / n) / mean_b.
  MCEstimate ratio(std::uint64_t seed) const;
  const MomentAccumulator& a_moments() const noexcept { return a_; }

 private:
  std::uint64_t n_ = 0;
  double mean_a_ = 0.0, mean_b_ = 0.0;
  double m2_a_ = 0.0, m2_b_ = 0.0, c_ab_ = 0.0;
  MomentAccumulator a_;
};

int resolve_workers(int workers) noexcept;

// Runs `body(acc, index, stream)` for every sample index in [0, n), sharded
// over chunks, and returns the tree-merged accumulator. The first exception
// (by chunk index) is rethrown after the parallel region.
template <class Accumulator, class Fn>
Accumulator run_chunked(std::uint64_t n, std::uint64_t seed, int workers, Fn&& body) {
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Accumulator> partial(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  const int threads = resolve_workers(workers);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    try {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunkSize;
      const std::uint64_t end = std::min(n, begin + kChunkSize);
      Accumulator acc;
      for (std::uint64_t i = begin; i < end; ++i) {
        RandomStream stream = derive_substream(seed, i);
        body(acc, i, stream);
      }
      partial[c] = acc;
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (partial.empty()) return Accumulator{};
  for (std::size_t width = 1; width < partial.size(); width *= 2) {
    for (std::size_t i = 0; i + width < partial.size(); i += 2 * width) {
      partial[i].merge(partial[i + width]);
    }
  }
  return partial.front();
}

// Mean of statistic(stream, index) over n samples.
template <class Statistic>
MCEstimate mc_mean(Statistic&& statistic, std::uint64_t n, std::uint64_t seed, int workers = 0) {
  if (n < 2) throw DomainError("mc_mean needs at least two samples");
  const auto acc = run_chunked<MomentAccumulator>(
      n, seed, workers, [&](MomentAccumulator& a, std::uint64_t i, RandomStream& s) {
        a.add(statistic(s, i));
      });
  return acc.estimate(seed);
}

// Serial reference: one plain loop, one running accumulator, no chunking.
template <class Statistic>
MCEstimate mc_mean_serial(Statistic&& statistic, std::uint64_t n, std::uint64_t seed) {
  MomentAccumulator acc;
  for (std::uint64_t i = 0; i < n; ++i) {
    RandomStream stream = derive_substream(seed, i);
    acc.add(statistic(stream, i));
  }
  return acc.estimate(seed);
}

// Ratio of means of the two components of statistic(stream, index).
template <class Statistic>
MCEstimate mc_ratio(Statistic&& statistic, std::uint64_t n, std::uint64_t seed, int workers = 0) {
  if (n < 2) throw DomainError("mc_ratio needs at least two samples");
  const auto acc = run_chunked<PairAccumulator>(
      n, seed, workers, [&](PairAccumulator& a, std::uint64_t i, RandomStream& s) {
        const auto [num, den] = statistic(s, i);
        a.add(num, den);
      });
  return acc.ratio(seed);
}

}  // namespace sectionlab
