// Serial reference vs OpenMP-chunked Monte Carlo means on section-moment
// statistics.

#include <benchmark/benchmark.h>

#include <cmath>

#include "sectionlab/bodies.hpp"
#include "sectionlab/mc.hpp"
#include "sectionlab/sampling.hpp"

using namespace sectionlab;

namespace {

const ConvexBody& box() {
  static const ConvexBody b = ConvexBody::cube(3, 1.0);
  return b;
}

const ConvexBody& ellipsoid() {
  static const ConvexBody e =
      ConvexBody::ellipsoid_axes(Eigen::VectorXd::Zero(3), Eigen::Vector3d(1, 2, 3));
  return e;
}

// |K cap E|^{d+p} for a uniform plane E through the origin.
auto linear_moment(const ConvexBody& body) {
  return [&body](RandomStream& s, std::uint64_t) {
    const LinearSubspace e = sample_grassmannian(3, 2, s);
    return std::pow(section_volume_linear(body, e), 4.0);
  };
}

// Weighted chord cube over lines hitting the body.
auto affine_moment(const ConvexBody& body) {
  return [&body](RandomStream& s, std::uint64_t) {
    const WeightedFlat f = sample_affine_flat(body, 1, s);
    return f.hit ? f.weight * std::pow(section_volume_affine(body, f.flat), 3) : 0.0;
  };
}

template <class Make>
void serial(benchmark::State& state, const ConvexBody& body, Make make) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_mean_serial(make(body), n, 1).mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <class Make>
void parallel(benchmark::State& state, const ConvexBody& body, Make make) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mc_mean(make(body), n, 1, workers).mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BoxLinear_Serial(benchmark::State& s) { serial(s, box(), linear_moment); }
void BM_BoxLinear_OpenMP(benchmark::State& s) { parallel(s, box(), linear_moment); }
void BM_EllipsoidAffine_Serial(benchmark::State& s) {
  serial(s, ellipsoid(), affine_moment);
}
void BM_EllipsoidAffine_OpenMP(benchmark::State& s) {
  parallel(s, ellipsoid(), affine_moment);
}

}  // namespace

BENCHMARK(BM_BoxLinear_Serial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoxLinear_OpenMP)->Args({20000, 1})->Args({20000, 2})->Args({20000, 0})
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EllipsoidAffine_Serial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EllipsoidAffine_OpenMP)->Args({20000, 1})->Args({20000, 2})->Args({20000, 0})
    ->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
