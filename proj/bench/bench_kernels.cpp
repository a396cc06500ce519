// OpenMP kernels against their serial reference versions.

#include <benchmark/benchmark.h>

#include <cmath>

#include "hadamard/diffeo.hpp"
#include "hadamard/parallel.hpp"
#include "hadamard/spaces.hpp"

using namespace hadamard;

namespace {

TorusDiffeo composite(std::size_t n) {
  if (n == 2) {
    IntMat a(2, 2);
    a << 2, 1, 1, 1;
    return TorusDiffeo::composite({TorusDiffeo::shear(2, 0, 1, 0.2, 2, 0.4), TorusDiffeo::linear(a),
                                   TorusDiffeo::shear(2, 1, 0, -0.1, 1, 1.3)});
  }
  return TorusDiffeo::composite({TorusDiffeo::shear(3, 1, 0, 0.3, 1), TorusDiffeo::shear(3, 2, 1, 0.2, 2),
                                 TorusDiffeo::shear(3, 0, 2, -0.25, 1)});
}

void BM_LambdaPlusParallel(benchmark::State& state) {
  const auto phi = composite(static_cast<std::size_t>(state.range(0)));
  const auto g = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_plus(phi, g).value);
}

void BM_LambdaPlusSerial(benchmark::State& state) {
  const auto phi = composite(static_cast<std::size_t>(state.range(0)));
  const auto g = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_plus_serial(phi, g));
}

void BM_JacobianFieldParallel(benchmark::State& state) {
  const auto phi = composite(3);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_field(phi, 16).values.size());
}

void BM_JacobianFieldSerial(benchmark::State& state) {
  const auto phi = composite(3);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_field_serial(phi, 16).values.size());
}

// Pairwise SPD(3) distances, the inner loop of the metric suites.
template <bool Parallel>
void BM_SpdDistances(benchmark::State& state) {
  const auto model = SpaceModel::spd(3);
  std::vector<Point> pts;
  for (int i = 0; i < 256; ++i) {
    auto rng = CounterRng::stream(1, "bench", static_cast<std::uint64_t>(i));
    pts.push_back(random_point(model, rng));
  }
  auto fn = [&](std::size_t i) { return distance(model, pts[i], pts[(i * 7 + 3) % pts.size()]); };
  for (auto _ : state) {
    const auto d = Parallel ? parallel::map<double>(pts.size(), fn) : parallel::map_serial<double>(pts.size(), fn);
    benchmark::DoNotOptimize(parallel::pairwise_sum(d));
  }
}

}  // namespace

BENCHMARK(BM_LambdaPlusParallel)->Args({2, 64})->Args({2, 128})->Args({3, 16})->Args({3, 32});
BENCHMARK(BM_LambdaPlusSerial)->Args({2, 64})->Args({2, 128})->Args({3, 16})->Args({3, 32});
BENCHMARK(BM_JacobianFieldParallel);
BENCHMARK(BM_JacobianFieldSerial);
BENCHMARK(BM_SpdDistances<true>)->Name("BM_SpdDistancesParallel");
BENCHMARK(BM_SpdDistances<false>)->Name("BM_SpdDistancesSerial");

BENCHMARK_MAIN();
