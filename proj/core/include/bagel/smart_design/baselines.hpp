#ifndef BAGEL_SMART_DESIGN_BASELINES_HPP
#define BAGEL_SMART_DESIGN_BASELINES_HPP

#include <span>

#include "bagel/smart_design/problem.hpp"

namespace bagel::smart_design {

/// How a component's coefficients are summarised into one score.
enum class ScoreAggregation { MaxAbs, L2 };

/// Per-component score of a coefficient vector.
Vector component_scores(const Vector& theta, std::span<const FeatureRange> offsets,
                        ScoreAggregation aggregation = ScoreAggregation::MaxAbs);

/// Basic repair: fit all features, drop components by ascending coefficient
/// score until the budget holds, then refit once on the survivors.
DesignSolution baseline_l2_br(const SmartDesignInstance& inst,
                              ScoreAggregation aggregation = ScoreAggregation::MaxAbs);

/// Orthogonal repair: repeatedly drop the component with the smallest
/// score / weight ratio and refit, until the budget holds.
DesignSolution baseline_l2_or(const SmartDesignInstance& inst,
                              ScoreAggregation aggregation = ScoreAggregation::MaxAbs);

}  // namespace bagel::smart_design

#endif  // BAGEL_SMART_DESIGN_BASELINES_HPP
