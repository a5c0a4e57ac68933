#include "bagel/smart_design/experiment.hpp"

#include <chrono>
#include <numeric>

#include "bagel/errors.hpp"
#include "bagel/numerics/rng.hpp"

namespace bagel::smart_design {
namespace {

constexpr std::uint64_t kFoldStream = 0xf01d5eedULL;

double millis(engine::Duration d) {
  return std::chrono::duration<double, std::milli>(d).count();
}

MethodRow score(Method method, std::size_t fold, const SmartDesignInstance& train,
                const SmartDesignInstance& test, const DesignSolution& sol) {
  MethodRow row{};
  row.method = method;
  row.fold = fold;
  row.train_loss = sol.train_loss;
  row.test_loss = sd_evaluate(sol, test.x, test.y);
  row.tightness = sd_tightness(sol.u, train.weights(), train.bound);
  row.nodes = 0;
  row.wall_ms = 0.0;
  row.completed = true;
  return row;
}

}  // namespace

double sd_tightness(std::span<const int> u, const Vector& weights, double bound) {
  if (u.size() != weights.size()) throw DimensionError("sd_tightness: |u| != |weights|");
  if (!(bound > 0.0)) throw DomainError("sd_tightness: bound must be positive");
  double used = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) used += u[i] != 0 ? weights[i] : 0.0;
  return used / bound;
}

double sd_evaluate(const DesignSolution& solution, const Matrix& x_test, const Vector& y_test) {
  if (x_test.cols() != solution.theta.size() || x_test.rows() != y_test.size()) {
    throw DimensionError("sd_evaluate: test data does not match the solution");
  }
  return numerics::norm2(numerics::subtract(numerics::multiply(x_test, solution.theta), y_test));
}

std::vector<FoldSplit> kfold_splits(std::size_t samples, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ValidationError("kfold_splits: at least 2 folds required");
  if (samples < folds) throw ValidationError("kfold_splits: fewer samples than folds");
  std::vector<std::size_t> perm(samples);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  numerics::Rng rng(numerics::hash_combine(seed, kFoldStream));
  rng.shuffle(std::span<std::size_t>(perm));

  std::vector<FoldSplit> out(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t lo = f * samples / folds;
    const std::size_t hi = (f + 1) * samples / folds;
    for (std::size_t i = 0; i < samples; ++i) {
      (i >= lo && i < hi ? out[f].test : out[f].train).push_back(perm[i]);
    }
  }
  return out;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Bagel:
      return "bagel";
    case Method::L2Br:
      return "l2_br";
    case Method::L2Or:
      return "l2_or";
  }
  return "?";
}

std::vector<MethodRow> run_experiment(const SmartDesignInstance& inst,
                                      const ExperimentSettings& settings) {
  std::vector<MethodRow> rows;
  const auto splits = kfold_splits(inst.y.size(), settings.folds, inst.seed);
  for (std::size_t f = 0; f < splits.size(); ++f) {
    const auto train = inst.with_rows(splits[f].train);
    const auto test = inst.with_rows(splits[f].test);

    auto bagel = solve_bagel(train, settings.search);
    DesignSolution sol;
    if (bagel.best) {
      sol = std::move(*bagel.best);
    } else {
      // Stopped before the first leaf: the empty design is always feasible.
      sol.u.assign(train.num_components(), 0);
      sol.theta = Vector(train.x.cols());
      sol.train_loss = numerics::norm2(train.y);
    }
    MethodRow row = score(Method::Bagel, f, train, test, sol);
    row.nodes = bagel.stats.nodes_opened;
    row.wall_ms = millis(bagel.stats.wall_time);
    row.completed = bagel.stats.completed;
    rows.push_back(row);

    for (Method m : {Method::L2Br, Method::L2Or}) {
      const auto start = engine::Clock::now();
      const auto base = m == Method::L2Br ? baseline_l2_br(train, settings.aggregation)
                                          : baseline_l2_or(train, settings.aggregation);
      MethodRow b = score(m, f, train, test, base);
      b.wall_ms = millis(engine::Clock::now() - start);
      rows.push_back(b);
    }
  }
  return rows;
}

}  // namespace bagel::smart_design
