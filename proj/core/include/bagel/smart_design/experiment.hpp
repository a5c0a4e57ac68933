#ifndef BAGEL_SMART_DESIGN_EXPERIMENT_HPP
#define BAGEL_SMART_DESIGN_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bagel/engine/search.hpp"
#include "bagel/smart_design/baselines.hpp"

namespace bagel::smart_design {

/// (sum_i u_i w_i) / bound.
double sd_tightness(std::span<const int> u, const Vector& weights, double bound);

/// ||X_test theta - y_test||_2.
double sd_evaluate(const DesignSolution& solution, const Matrix& x_test, const Vector& y_test);

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Shuffles the sample indices with `seed` and cuts them into `folds` equal
/// test blocks (each ~1/folds of the data); the rest of each fold trains.
std::vector<FoldSplit> kfold_splits(std::size_t samples, std::size_t folds, std::uint64_t seed);

enum class Method { Bagel, L2Br, L2Or };
std::string to_string(Method m);

/// One (method, fold) outcome.
struct MethodRow {
  Method method;
  std::size_t fold;
  double train_loss;
  double test_loss;
  double tightness;
  std::size_t nodes;
  double wall_ms;
  bool completed;
};

struct ExperimentSettings {
  std::size_t folds = 5;
  engine::SearchOptions search;
  ScoreAggregation aggregation = ScoreAggregation::MaxAbs;
};

/// Runs BaGeL and both repair baselines on every fold of the instance.
/// Rows come out fold-major in the order bagel, l2_br, l2_or. If the search is
/// stopped before any leaf is reached the bagel row reports the all-off design.
std::vector<MethodRow> run_experiment(const SmartDesignInstance& inst,
                                      const ExperimentSettings& settings);

}  // namespace bagel::smart_design

#endif  // BAGEL_SMART_DESIGN_EXPERIMENT_HPP
