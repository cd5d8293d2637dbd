#include <benchmark/benchmark.h>

#include "nahmlab/bergmann.hpp"
#include "nahmlab/diracop.hpp"
#include "nahmlab/gauge.hpp"
#include "nahmlab/linalg.hpp"
#include "nahmlab/quad.hpp"

using namespace nahmlab;

static void BM_BallRuleIntegrate(benchmark::State& state) {
  BallRule rule({int(state.range(0)), 12, 12, 16}, 1.0);
  auto f = [](const Point4& x) { return cplx(std::exp(-x.norm2())); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate(rule, f));
  state.SetComplexityN(rule.size());
}
BENCHMARK(BM_BallRuleIntegrate)->Arg(8)->Arg(16)->Arg(32)->Complexity();

static void BM_DiracFormFlat(benchmark::State& state) {
  const GaugeField fl = flat_field(1);
  const AnsatzSpace v = AnsatzSpace::poly(int(state.range(0)), 1, Chirality::minus);
  for (auto _ : state) benchmark::DoNotOptimize(dirac_form(fl, v));
}
BENCHMARK(BM_DiracFormFlat)->Arg(4)->Arg(6)->Arg(8);

static void BM_DiracFormInstanton(benchmark::State& state) {
  const GaugeField b = bpst_field(0.3, {});
  const AnsatzSpace v = AnsatzSpace::poly(int(state.range(0)), 2, Chirality::minus);
  for (auto _ : state) benchmark::DoNotOptimize(dirac_form(b, v));
}
BENCHMARK(BM_DiracFormInstanton)->Arg(4)->Arg(6);

static void BM_Bergmann(benchmark::State& state) {
  const GaugeField fl = flat_field(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_bergmann(fl, int(state.range(0)), 1.0, 1e-8));
}
BENCHMARK(BM_Bergmann)->Arg(4)->Arg(6);

static void BM_HermitianEig(benchmark::State& state) {
  const int n = int(state.range(0));
  MatrixXcd a = MatrixXcd::Random(n, n);
  a = (a + a.adjoint()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(linalg::eigh(a));
}
BENCHMARK(BM_HermitianEig)->Arg(128)->Arg(512)->Arg(1024);

static void BM_GreenSolve(benchmark::State& state) {
  const GaugeField fl = flat_field(1);
  GreenSolver gs(fl, 6, 1.0);
  const AnsatzSpace v = AnsatzSpace::poly(4, 1, Chirality::minus);
  const BergmannSpace b = compute_bergmann(fl, 4, 1.0, 1e-8);
  for (auto _ : state) benchmark::DoNotOptimize(gs.green_gram(v, b.basis));
}
BENCHMARK(BM_GreenSolve);

BENCHMARK_MAIN();
