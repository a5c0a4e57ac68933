#ifndef BAGEL_CONSTRAINTS_BUDGET_HPP
#define BAGEL_CONSTRAINTS_BUDGET_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "bagel/constraints/domains.hpp"
#include "bagel/constraints/extended_table.hpp"

namespace bagel::constraints {

inline constexpr std::size_t kMaxEnumeratedComponents = 25;
inline constexpr std::size_t kMaxEncodedArity = 1'000'000;

/// sum_i u_i w_i < bound (or <= bound when strict is false).
struct BudgetConstraint {
  Vector weights;
  double bound = 0.0;
  bool strict = true;

  BudgetConstraint(Vector weights, double bound, bool strict = true);

  bool admits(double total) const { return strict ? total < bound : total <= bound; }
  bool satisfied(std::span<const int> u) const;
};

/// A selectable component: a block of input_size features costing weight.
struct Component {
  std::size_t input_size = 1;
  double weight = 0.0;
  friend bool operator==(const Component&, const Component&) = default;
};

/// All u in {0,1}^k admitted by the budget, in lexicographic order (u_1 most
/// significant). Throws CapacityError for k > 25.
std::vector<std::vector<int>> enumerate_budget_feasible(const BudgetConstraint& budget);
std::vector<std::vector<int>> enumerate_budget_feasible(const Vector& weights, double bound);

/// Smart-design coupling and budget as one extended table: every feasible u is
/// expanded so each component's value is repeated over its input block, and the
/// table uses the masked l0 cost with threshold 0.
ExtendedTable encode_smart_design_as_et(std::span<const Component> components, double bound,
                                        bool strict = true);

struct Fixing {
  std::size_t index;
  BoolDomain value;
  friend bool operator==(const Fixing&, const Fixing&) = default;
};

struct PropagationResult {
  std::vector<Fixing> fixings;
  bool failed = false;
};

/// Budget filtering: with S the weight already fixed to ONE, every unfixed u_i
/// whose weight no longer fits (w_i + S >= bound) is fixed to ZERO. Fails when
/// S itself is not admitted. Mutates the domains in place.
PropagationResult budget_propagate(std::span<BoolDomain> domains, const BudgetConstraint& budget);

}  // namespace bagel::constraints

#endif  // BAGEL_CONSTRAINTS_BUDGET_HPP
