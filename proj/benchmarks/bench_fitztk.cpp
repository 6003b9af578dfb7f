#include <benchmark/benchmark.h>

#include "fitztk/conjugate.hpp"
#include "fitztk/fitzpatrick.hpp"
#include "fitztk/generators.hpp"

using namespace fitztk;

namespace {

static void BM_FitzpatrickPolygonal(benchmark::State& state) {
  auto pieces = static_cast<int>(state.range(0));
  OperatorGraph op = gen_polygonal_soup(2, pieces, 1);
  Rng rng(2);
  PairedPoint z = rng.normal_pair(2, 1.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fitzpatrick(op, z));
  }
}
BENCHMARK(BM_FitzpatrickPolygonal)->Arg(4)->Arg(16)->Arg(64);

static void BM_FitzpatrickLinear(benchmark::State& state) {
  auto n = static_cast<Eigen::Index>(state.range(0));
  OperatorGraph op = gen_linear_monotone(n, 3);
  Rng rng(4);
  PairedPoint z = rng.normal_pair(n, 1.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fitzpatrick(op, z));
  }
}
BENCHMARK(BM_FitzpatrickLinear)->Arg(2)->Arg(5)->Arg(8);

static void BM_IsMonotone(benchmark::State& state) {
  OperatorGraph op = gen_polygonal_soup(2, static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_monotone(op));
  }
}
BENCHMARK(BM_IsMonotone)->Arg(4)->Arg(8)->Arg(16);

static void BM_ProjectGraphHull(benchmark::State& state) {
  OperatorGraph op = gen_maximal_1d(7);
  HullGenerators hull = graph_hull(op);
  Rng rng(8);
  Vector q = rng.normal_pair(1, 2.0).flatten();
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(hull, q));
  }
}
BENCHMARK(BM_ProjectGraphHull);

static void BM_Conjugate(benchmark::State& state) {
  bool fast = state.range(1) != 0;
  int n = static_cast<int>(state.range(0));
  Rng rng(9);
  std::vector<double> xs(n);
  xs[0] = -2.0;
  for (int i = 1; i < n; ++i) xs[i] = xs[i - 1] + 4.0 / n;
  std::vector<ExtendedReal> vals;
  for (int i = 0; i < n; ++i) vals.emplace_back(rng.normal());
  GridFunction f(xs, vals);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fast ? fast_conjugate(f) : brute_conjugate(f));
  }
}
BENCHMARK(BM_Conjugate)->Args({128, 0})->Args({128, 1})->Args({512, 0})->Args({512, 1});

}  // namespace

BENCHMARK_MAIN();
