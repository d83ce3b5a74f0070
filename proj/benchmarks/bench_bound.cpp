#include <benchmark/benchmark.h>

#include <vector>

#include "flp/bound.hpp"
#include "flp/subproblem.hpp"

namespace {

flp::Instance dense_1d(int n) { return flp::generate_instance(1, n, 1.0, 7); }

void BM_Omega2ClosedForm(benchmark::State& state) {
  flp::Instance inst = dense_1d(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flp::omega2_closed_form(inst));
}
BENCHMARK(BM_Omega2ClosedForm)->Arg(33);

void BM_MasterLevel2(benchmark::State& state) {
  flp::Instance inst = dense_1d(static_cast<int>(state.range(0)));
  flp::SubsetFamily fam = flp::build_family(inst, 2);
  std::vector<flp::SubsetBound> bounds;
  for (const std::vector<int>& subset : fam.subsets)
    bounds.push_back(flp::gamma_1d(inst, subset));
  for (auto _ : state) {
    std::vector<flp::SubsetBound> copy = bounds;
    benchmark::DoNotOptimize(flp::master_bound(inst, std::move(copy)));
  }
}
BENCHMARK(BM_MasterLevel2)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_Gamma1dSubset(benchmark::State& state) {
  flp::Instance inst = dense_1d(12);
  std::vector<int> subset;
  for (int i = 1; i <= state.range(0); ++i) subset.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(flp::gamma_1d(inst, subset));
}
BENCHMARK(BM_Gamma1dSubset)->Arg(5)->Arg(7);

void BM_SimplexRelaxation(benchmark::State& state) {
  flp::Instance inst = dense_1d(static_cast<int>(state.range(0)));
  flp::SubsetFamily fam = flp::build_family(inst, 2);
  std::vector<flp::SubsetBound> bounds;
  for (const std::vector<int>& subset : fam.subsets)
    bounds.push_back(flp::gamma_1d(inst, subset));
  flp::LinearProgram lp = flp::build_master_lp(inst, bounds);
  flp::LpOptions opt;
  opt.mode = flp::ArithMode::kFloat;
  for (auto _ : state) benchmark::DoNotOptimize(flp::solve_lp(lp, opt));
}
BENCHMARK(BM_SimplexRelaxation)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
