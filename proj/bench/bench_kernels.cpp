#include <cmath>

#include <benchmark/benchmark.h>

#include "gcrit/classic_bounds.hpp"
#include "gcrit/kernel.hpp"

using namespace gcrit;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

const BirmanSchwingerOperator& operator_fixture() {
  static const BirmanSchwingerOperator op(make_exponential(), AngularMomentum(3));
  return op;
}

void BM_apply(benchmark::State& state) {
  const auto& op = operator_fixture();
  const auto u = op.regular_start();
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(u, mode(state)));
  state.SetLabel(mode(state) == Execution::serial ? "serial" : "parallel");
}

void BM_prefix_integral(benchmark::State& state) {
  const auto& op = operator_fixture();
  const auto f = op.sample([](double r) { return std::exp(-r) * std::cos(r); });
  for (auto _ : state) benchmark::DoNotOptimize(op.grid()->prefix_integral(f.values(), mode(state)));
  state.SetLabel(mode(state) == Execution::serial ? "serial" : "parallel");
}

void BM_minimize_scan(benchmark::State& state) {
  OptimizerConfig config = scale_config();
  config.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(calogero_upper_nonlinear(make_exponential(), AngularMomentum(0), config));
  }
  state.SetLabel(mode(state) == Execution::serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_apply)->Arg(0)->Arg(1);
BENCHMARK(BM_prefix_integral)->Arg(0)->Arg(1);
BENCHMARK(BM_minimize_scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
