#include "bagel/constraints/budget.hpp"

#include <string>

#include "bagel/errors.hpp"

namespace bagel::constraints {

BudgetConstraint::BudgetConstraint(Vector w, double b, bool s)
    : weights(std::move(w)), bound(b), strict(s) {
  for (double x : weights) {
    if (x < 0.0) throw DomainError("BudgetConstraint: weights must be non-negative");
  }
}

bool BudgetConstraint::satisfied(std::span<const int> u) const {
  if (u.size() != weights.size()) throw DimensionError("BudgetConstraint: |u| != |weights|");
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) total += u[i] != 0 ? weights[i] : 0.0;
  return admits(total);
}

namespace {

void enumerate(const BudgetConstraint& budget, std::size_t i, double used, std::vector<int>& u,
               std::vector<std::vector<int>>& out) {
  if (i == u.size()) {
    out.push_back(u);
    return;
  }
  u[i] = 0;
  enumerate(budget, i + 1, used, u, out);
  // Weights are non-negative, so a prefix that already breaks the budget cannot recover.
  const double with = used + budget.weights[i];
  if (budget.admits(with)) {
    u[i] = 1;
    enumerate(budget, i + 1, with, u, out);
    u[i] = 0;
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_budget_feasible(const BudgetConstraint& budget) {
  const std::size_t k = budget.weights.size();
  if (k > kMaxEnumeratedComponents) {
    throw CapacityError("enumerate_budget_feasible: " + std::to_string(k) +
                        " components exceeds the limit of " +
                        std::to_string(kMaxEnumeratedComponents));
  }
  std::vector<std::vector<int>> out;
  if (!budget.admits(0.0)) return out;
  std::vector<int> u(k, 0);
  enumerate(budget, 0, 0.0, u, out);
  return out;
}

std::vector<std::vector<int>> enumerate_budget_feasible(const Vector& weights, double bound) {
  return enumerate_budget_feasible(BudgetConstraint(weights, bound));
}

ExtendedTable encode_smart_design_as_et(std::span<const Component> components, double bound,
                                        bool strict) {
  std::size_t arity = 0;
  std::vector<double> weights;
  for (const auto& c : components) {
    arity += c.input_size;
    weights.push_back(c.weight);
  }
  if (arity > kMaxEncodedArity) {
    throw CapacityError("encode_smart_design_as_et: total input size " + std::to_string(arity) +
                        " exceeds " + std::to_string(kMaxEncodedArity));
  }
  const auto feasible =
      enumerate_budget_feasible(BudgetConstraint(Vector(std::move(weights)), bound, strict));

  std::vector<Vector> tuples;
  tuples.reserve(feasible.size());
  for (const auto& u : feasible) {
    std::vector<double> expanded;
    expanded.reserve(arity);
    for (std::size_t c = 0; c < components.size(); ++c) {
      expanded.insert(expanded.end(), components[c].input_size, static_cast<double>(u[c]));
    }
    tuples.emplace_back(std::move(expanded));
  }
  return ExtendedTable(arity, std::move(tuples), CostFn::masked_l0(), 0.0);
}

PropagationResult budget_propagate(std::span<BoolDomain> domains, const BudgetConstraint& budget) {
  if (domains.size() != budget.weights.size()) {
    throw DimensionError("budget_propagate: |domains| != |weights|");
  }
  double committed = 0.0;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (domains[i] == BoolDomain::One) committed += budget.weights[i];
  }
  PropagationResult result;
  if (!budget.admits(committed)) {
    result.failed = true;
    return result;
  }
  // Fixing to ZERO never changes the committed sum, so one pass reaches the fixpoint.
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (domains[i] == BoolDomain::Both && !budget.admits(committed + budget.weights[i])) {
      domains[i] = BoolDomain::Zero;
      result.fixings.push_back({i, BoolDomain::Zero});
    }
  }
  return result;
}

}  // namespace bagel::constraints
