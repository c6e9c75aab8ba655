#include <benchmark/benchmark.h>

#include "dpso/dpso.hpp"

using namespace dpso;

namespace {

SwarmConfig sphere_config(std::size_t n, std::size_t N, Variant variant) {
  SwarmConfig c;
  c.swarm_size = N;
  c.dimension = n;
  c.variant = variant;
  c.lb.assign(n, -5.12);
  c.ub.assign(n, 5.12);
  c.kernel = kernel_for_box(c.lb, c.ub, 0.1);
  return c;
}

void BM_Step(benchmark::State& state) {
  const auto variant = state.range(2) ? Variant::Divergence : Variant::Standard;
  const auto c = sphere_config(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), variant);
  const auto f = find_function("sphere").fn;
  SwarmState s = initialize(c, f);
  for (auto _ : state) step(s, c, f);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Step)->ArgsProduct({{10, 30, 100, 2000}, {40, 400}, {0, 1}});

void BM_Evaluate(benchmark::State& state, const char* name) {
  const auto& spec = find_function(name);
  const auto x = uniform_box(42, 0, 0, std::vector<double>(30, spec.lower_bound), std::vector<double>(30, spec.upper_bound));
  for (auto _ : state) benchmark::DoNotOptimize(spec.fn(x));
}
BENCHMARK_CAPTURE(BM_Evaluate, sphere, "sphere");
BENCHMARK_CAPTURE(BM_Evaluate, ackley, "ackley");
BENCHMARK_CAPTURE(BM_Evaluate, weierstrass, "weierstrass");
BENCHMARK_CAPTURE(BM_Evaluate, whitley, "whitley");

void BM_Kernel(benchmark::State& state) {
  const auto family = static_cast<KernelFamily>(state.range(0));
  const KernelSpec spec{family, 1.0, 1.0, 1.0};
  const std::vector<double> p(30, 0.25), g(30, -0.1);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_value(spec, p, g));
}
BENCHMARK(BM_Kernel)->DenseRange(0, 2);

void BM_Uniform01(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(uniform01({42, 0, i++, 3, Slot::r1()}));
}
BENCHMARK(BM_Uniform01);

}  // namespace
BENCHMARK_MAIN();
