#include <benchmark/benchmark.h>

#include "knotflow/braid.hpp"
#include "knotflow/diagram.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/seifert.hpp"
#include "knotflow/vogel.hpp"

using namespace knotflow;

static void BM_SeifertMatrix(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  BraidWord b = knm_braid(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(seifert_matrix(b));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_SeifertMatrix)->Arg(8)->Arg(16)->Arg(24)->Arg(32)->Complexity();

static void BM_ExactInertia(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  BraidWord b = torus_braid(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(signature(b));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_ExactInertia)->Arg(6)->Arg(10)->Arg(14)->Arg(18)->Complexity();

static void BM_OmegaSignature(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  SeifertData sd = seifert_matrix(torus_braid(n, n));
  Rational theta{1, 3};
  for (auto _ : state) benchmark::DoNotOptimize(omega_signature(sd, theta));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_OmegaSignature)->Arg(6)->Arg(10)->Arg(14)->Arg(18)->Complexity();

static void BM_VogelRoundTrip(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Diagram d = braid_to_diagram(torus_braid(n, n));
  for (auto _ : state) benchmark::DoNotOptimize(vogel_braid(d));
}
BENCHMARK(BM_VogelRoundTrip)->Arg(4)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
