// Microbenchmarks for the two hot paths: orthonormal basis construction
// from weight moments, and one determinant evaluation inside an energy scan.

#include <benchmark/benchmark.h>

#include "oppq/quantizer.hpp"

using namespace oppq;

namespace {

void bm_build_basis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PrecisionContext ctx(default_digits_for_order(n));
  ctx.activate();
  WeightMoments wm = weight_moments(WeightSpec::parse("gaussian"), 2 * n, ctx);
  for (auto _ : state) {
    OrthoBasis basis = build_basis(wm, n, ctx);
    benchmark::DoNotOptimize(basis.xi.back().back());
  }
}

void bm_determinant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PrecisionContext ctx(default_digits_for_order(n));
  ctx.activate();
  auto problem = ProblemSpec::parse("rational");
  auto weight = WeightSpec::parse("gaussian");
  OrthoBasis basis = build_basis(weight_moments(weight, 2 * n, ctx), n, ctx);
  BigReal e("-2.5");
  for (auto _ : state) {
    SignLogDet d = determinant_at(Method::Oppq, problem, weight, &basis, e, n, ctx);
    benchmark::DoNotOptimize(d.log_magnitude);
    e += BigReal(1) / 1000000;  // defeat any caching by moving the energy
  }
}

void bm_determinant_global_local(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PrecisionContext ctx(default_digits_for_order(n));
  ctx.activate();
  auto problem = ProblemSpec::parse("rational");
  auto weight = WeightSpec::parse("gaussian");
  OrthoBasis basis = build_basis(weight_moments(weight, 2 * n, ctx), n, ctx);
  BigReal e("-2.5");
  for (auto _ : state) {
    SignLogDet d =
        determinant_at(Method::GlobalLocal, problem, weight, &basis, e, n, ctx);
    benchmark::DoNotOptimize(d.log_magnitude);
    e += BigReal(1) / 1000000;
  }
}

}  // namespace

BENCHMARK(bm_build_basis)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_determinant)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_determinant_global_local)
    ->Arg(20)
    ->Arg(40)
    ->Arg(80)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
