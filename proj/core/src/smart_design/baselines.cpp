#include "bagel/smart_design/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bagel/errors.hpp"
#include "bagel/numerics/least_squares.hpp"

namespace bagel::smart_design {
namespace {

DesignSolution fit(const SmartDesignInstance& inst, std::vector<int> u) {
  auto ls = numerics::solve_least_squares(inst.x, inst.y, expand_mask(u, inst.offsets, inst.x.cols()));
  return {std::move(u), std::move(ls.theta), ls.loss, std::nullopt};
}

double used_weight(const SmartDesignInstance& inst, const std::vector<int>& u) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) total += u[i] != 0 ? inst.components[i].weight : 0.0;
  return total;
}

}  // namespace

Vector component_scores(const Vector& theta, std::span<const FeatureRange> offsets,
                        ScoreAggregation aggregation) {
  Vector scores(offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (offsets[i].end > theta.size()) throw DimensionError("component_scores: range past theta");
    double acc = 0.0;
    for (std::size_t j = offsets[i].begin; j < offsets[i].end; ++j) {
      if (aggregation == ScoreAggregation::MaxAbs) {
        acc = std::max(acc, std::abs(theta[j]));
      } else {
        acc += theta[j] * theta[j];
      }
    }
    scores[i] = aggregation == ScoreAggregation::MaxAbs ? acc : std::sqrt(acc);
  }
  return scores;
}

DesignSolution baseline_l2_br(const SmartDesignInstance& inst, ScoreAggregation aggregation) {
  const std::size_t k = inst.num_components();
  std::vector<int> u(k, 1);
  const auto budget = inst.budget();
  auto full = fit(inst, u);
  if (budget.admits(used_weight(inst, u))) return full;

  const Vector scores = component_scores(full.theta, inst.offsets, aggregation);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  for (std::size_t i : order) {
    if (budget.admits(used_weight(inst, u))) break;
    u[i] = 0;
  }
  return fit(inst, std::move(u));
}

DesignSolution baseline_l2_or(const SmartDesignInstance& inst, ScoreAggregation aggregation) {
  const std::size_t k = inst.num_components();
  std::vector<int> u(k, 1);
  const auto budget = inst.budget();
  auto current = fit(inst, u);

  while (!budget.admits(used_weight(inst, u))) {
    const Vector scores = component_scores(current.theta, inst.offsets, aggregation);
    std::size_t victim = k;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      if (u[i] == 0) continue;
      const double w = inst.components[i].weight;
      const double ratio = w > 0.0 ? scores[i] / w : std::numeric_limits<double>::infinity();
      if (victim == k || ratio < best_ratio) {
        victim = i;
        best_ratio = ratio;
      }
    }
    if (victim == k) break;  // nothing left to remove
    u[victim] = 0;
    current = fit(inst, u);
  }
  return current;
}

}  // namespace bagel::smart_design
