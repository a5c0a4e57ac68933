#include <benchmark/benchmark.h>

#include "bagel/constraints/budget.hpp"
#include "bagel/numerics/least_squares.hpp"
#include "bagel/numerics/nmf.hpp"
#include "bagel/numerics/rng.hpp"
#include "bagel/prior_nmf/problem.hpp"
#include "bagel/smart_design/baselines.hpp"
#include "bagel/smart_design/problem.hpp"

namespace {

using namespace bagel;

void BM_LeastSquares(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  numerics::Rng rng(1);
  numerics::Matrix x(m, d);
  for (double& v : x.values()) v = rng.normal();
  numerics::Vector y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = rng.normal();
  numerics::Vector mask(d, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(numerics::solve_least_squares(x, y, mask));
}
BENCHMARK(BM_LeastSquares)->Args({100, 10})->Args({400, 40})->Args({1000, 100});

void BM_Nmf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = 50, k = 4;
  numerics::Rng rng(2);
  numerics::Matrix a(n, m);
  for (double& v : a.values()) v = rng.uniform();
  const numerics::Matrix mask(n, k, 1.0);
  numerics::NmfOptions opts;
  opts.iters = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    numerics::Rng init(3);
    benchmark::DoNotOptimize(numerics::nmf_multiplicative(a, k, mask, init, opts));
  }
}
BENCHMARK(BM_Nmf)->Args({20, 100})->Args({20, 2000})->Args({100, 1000});

void BM_BudgetEnumeration(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  numerics::Rng rng(4);
  numerics::Vector w(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) total += (w[i] = 1.0 + static_cast<double>(rng.below(10)));
  const constraints::BudgetConstraint budget(w, 0.5 * total);
  for (auto _ : state) benchmark::DoNotOptimize(constraints::enumerate_budget_feasible(budget));
}
BENCHMARK(BM_BudgetEnumeration)->DenseRange(8, 16, 4);

smart_design::SmartDesignInstance design(std::size_t features, std::size_t samples) {
  smart_design::SmartDesignParams p;
  p.features = features;
  p.samples = samples;
  p.cost_percent = 0.6;
  p.seed = 5;
  return smart_design::sd_generate_instance(p).instance;
}

void BM_SmartDesignSearch(benchmark::State& state) {
  const auto inst = design(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  std::size_t nodes = 0;
  for (auto _ : state) {
    const auto r = smart_design::solve_bagel(inst);
    nodes = r.stats.nodes_opened;
    benchmark::DoNotOptimize(r.best);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_SmartDesignSearch)->Args({10, 100})->Args({40, 400})->Args({100, 1000})
    ->Unit(benchmark::kMillisecond);

void BM_RepairBaselines(benchmark::State& state) {
  const auto inst = design(static_cast<std::size_t>(state.range(0)), 400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(smart_design::baseline_l2_br(inst));
    benchmark::DoNotOptimize(smart_design::baseline_l2_or(inst));
  }
}
BENCHMARK(BM_RepairBaselines)->Arg(10)->Arg(40);

void BM_PriorNmfSearch(benchmark::State& state) {
  prior_nmf::NmfParams p;
  p.seed = 6;
  const auto inst = prior_nmf::nmf_generate_instance(p);
  const prior_nmf::TrainSettings settings{static_cast<std::size_t>(state.range(0)), 1};
  for (auto _ : state) benchmark::DoNotOptimize(prior_nmf::solve_prior_nmf(inst, settings).best);
}
BENCHMARK(BM_PriorNmfSearch)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
