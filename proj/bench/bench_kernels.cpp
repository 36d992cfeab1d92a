// Serial reference vs OpenMP path for each parallel kernel. Argument 0 runs
// the serial path, 1 the parallel one.

#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "hypcox/kernels.hpp"
#include "hypcox/quotient.hpp"

using namespace hypcox;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

struct Pentagon {
  RacgSystem w{oracle::nerve("pentagon")};
  FiniteQuotient q = congruence_image(w, 3, 10'000'000);
  QuotientDavis y = quotient_davis(w, q);
  SimplicialComplex th = thicken(y.complex).complex;
};

const Pentagon& pentagon() {
  static const Pentagon p;
  return p;
}

void BM_FullCycles(benchmark::State& state) {
  const auto& p = pentagon();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::full_cycles(p.th.skeleton(), 5, exec_of(state)));
}

void BM_CongruenceImage(benchmark::State& state) {
  const auto& p = pentagon();
  for (auto _ : state) benchmark::DoNotOptimize(congruence_image(p.w, 3, 10'000'000, exec_of(state)));
}

void BM_ThickeningBall(benchmark::State& state) {
  const auto& p = pentagon();
  for (auto _ : state) benchmark::DoNotOptimize(thickening_ball(p.w, 5, 10'000'000, &p.q, exec_of(state)));
}

void BM_QuotientDavis(benchmark::State& state) {
  const auto& p = pentagon();
  for (auto _ : state) benchmark::DoNotOptimize(quotient_davis(p.w, p.q, exec_of(state)));
}

void BM_LocallyLarge(benchmark::State& state) {
  const auto& p = pentagon();
  for (auto _ : state) benchmark::DoNotOptimize(is_locally_k_large(p.y.complex, 5, exec_of(state)));
}

void BM_Antisymmetrize(benchmark::State& state) {
  static oracle::DavisFixture f("pentagon", 3);
  Antisymmetrizer a(f.w, f.q, f.y, f.tri, orientation(f.q), exec_of(state));
  std::mt19937_64 rng(7);
  auto h = oracle::random_cochain(rng, a, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a.antisymmetrize(h));
}

}  // namespace

BENCHMARK(BM_FullCycles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CongruenceImage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThickeningBall)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuotientDavis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocallyLarge)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Antisymmetrize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
