#ifndef BAGEL_SMART_DESIGN_INSTANCE_HPP
#define BAGEL_SMART_DESIGN_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bagel/constraints/budget.hpp"
#include "bagel/numerics/matrix.hpp"

namespace bagel::smart_design {

using constraints::Component;
using numerics::Matrix;
using numerics::Vector;

/// Feature range [begin, end) owned by one component.
struct FeatureRange {
  std::size_t begin;
  std::size_t end;
  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

/// Budget-constrained component selection for linear regression.
///
/// Components partition the d columns of X in order: component i owns
/// `offsets[i]`. Selecting component i costs `components[i].weight`; the
/// selected weights must stay below `bound` (or at most `bound` when
/// `strict_budget` is false).
struct SmartDesignInstance {
  Matrix x;
  Vector y;
  std::vector<Component> components;
  double bound = 0.0;
  bool strict_budget = true;
  std::vector<FeatureRange> offsets;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  /// Builds the offsets from the component sizes and checks every invariant.
  static SmartDesignInstance make(Matrix x, Vector y, std::vector<Component> components,
                                  double bound, double noise_sigma = 0.0, std::uint64_t seed = 0,
                                  bool strict_budget = true);

  std::size_t num_components() const { return components.size(); }
  Vector weights() const;
  constraints::BudgetConstraint budget() const;

  /// Same components and budget on a subset of the samples.
  SmartDesignInstance with_rows(std::span<const std::size_t> rows) const;
};

/// Expands a component activation u into a per-feature 0/1 mask.
Vector expand_mask(std::span<const int> u, std::span<const FeatureRange> offsets,
                   std::size_t features);

struct SmartDesignParams {
  std::size_t features = 10;
  std::size_t samples = 100;
  double cost_percent = 0.6;
  std::uint64_t seed = 0;
  /// Component count; 0 selects min(features, 8).
  std::size_t components = 0;
  /// Noise standard deviation relative to std(X theta*).
  double noise_factor = 0.1;
};

inline constexpr std::size_t kDefaultMaxComponents = 8;

/// Hard validation; throws ValidationError.
void validate(const SmartDesignParams& params);
/// Messages for values outside the reference sweep grids (not errors).
std::vector<std::string> grid_warnings(const SmartDesignParams& params);

struct GeneratedSmartDesign {
  SmartDesignInstance instance;
  Vector theta_star;
  std::vector<int> planted_u;
};

/// Deterministic synthetic instance: random component sizes partitioning the
/// features, weights in [1, 10], bound = cost_percent * total weight, a planted
/// theta* on a budget-feasible subset of components, X ~ N(0, 1) and
/// y = X theta* + N(0, sigma^2).
GeneratedSmartDesign sd_generate_instance(const SmartDesignParams& params);

}  // namespace bagel::smart_design

#endif  // BAGEL_SMART_DESIGN_INSTANCE_HPP
