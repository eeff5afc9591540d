#include <riesz/canonical_product.hpp>
#include <riesz/concentration.hpp>
#include <riesz/lightpoints.hpp>
#include <riesz/measure.hpp>
#include <riesz/primary_factor.hpp>

#include <benchmark/benchmark.h>

#include <complex>

namespace {

using namespace riesz;

const PointMeasure& fixture(double rmax)
{
  static const PointMeasure small = generate_profile(Profile::parse("exp:c=1,q=1"), 6.0, 42);
  static const PointMeasure large = generate_profile(Profile::parse("exp:c=0.1,q=1"), 10.5, 42);
  return rmax < 7.0 ? small : large;
}

void BM_LogAbsPrimary(benchmark::State& state)
{
  const Genus p(static_cast<std::uint64_t>(state.range(0)));
  Point w{0.31, -0.27};
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_abs_primary(w, p));
    w *= Point{1.0000001, 1e-7};
  }
}
BENCHMARK(BM_LogAbsPrimary)->Arg(4)->Arg(32)->Arg(128);

void BM_EvalV(benchmark::State& state)
{
  const CanonicalProduct v(fixture(static_cast<double>(state.range(0))), 1.25);
  const Point z = std::polar(0.7 * v.measure().rmax(), 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(v(z));
  }
  state.counters["atoms"] = static_cast<double>(v.measure().size());
}
BENCHMARK(BM_EvalV)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_Decompose(benchmark::State& state)
{
  const CanonicalProduct v(fixture(static_cast<double>(state.range(0))), 1.25);
  const Point z = std::polar(0.7 * v.measure().rmax(), 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(v, 1.0, z));
  }
}
BENCHMARK(BM_Decompose)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_ConcIndex(benchmark::State& state)
{
  const PointMeasure& mu = fixture(10.0);
  const Point z = std::polar(7.0, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conc_index(mu, 1.0, z));
  }
}
BENCHMARK(BM_ConcIndex);

void BM_ClassifyPoint(benchmark::State& state)
{
  const PointMeasure& mu = fixture(10.0);
  const double s = delta_of_r(mu, 1.0, 7.0);
  const Point z = std::polar(7.0, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_point(mu, 20.0, s, z));
  }
}
BENCHMARK(BM_ClassifyPoint);

} // namespace

BENCHMARK_MAIN();
