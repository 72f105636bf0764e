// Serial reference vs OpenMP kernels on the example grids.

#include <benchmark/benchmark.h>

#include "pseudocp/examples.hpp"
#include "pseudocp/kernels.hpp"

namespace {

using namespace pseudocp;

struct Fixture {
  ExampleSpec spec = default_example(1);
  RHSParametrization param = example_parametrization(spec);
  std::vector<ParamPoint> grid;
  explicit Fixture(int s) : grid(example_grid(spec, s, 5, 4)) {}
};

template <class Kernel>
void run(benchmark::State& state, Kernel kernel) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(f.param, f.grid));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.grid.size()));
}

void BM_PointsSerial(benchmark::State& s) { run(s, evaluate_points_serial); }
void BM_PointsParallel(benchmark::State& s) { run(s, evaluate_points_parallel); }
void BM_ShapeSerial(benchmark::State& s) { run(s, shape_reports_serial); }
void BM_ShapeParallel(benchmark::State& s) { run(s, shape_reports_parallel); }
void BM_CodazziSerial(benchmark::State& s) { run(s, codazzi_residuals_serial); }
void BM_CodazziParallel(benchmark::State& s) { run(s, codazzi_residuals_parallel); }

}  // namespace

BENCHMARK(BM_PointsSerial)->Arg(5)->Arg(20);
BENCHMARK(BM_PointsParallel)->Arg(5)->Arg(20);
BENCHMARK(BM_ShapeSerial)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShapeParallel)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodazziSerial)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodazziParallel)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
