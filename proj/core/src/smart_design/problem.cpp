#include "bagel/smart_design/problem.hpp"

#include "bagel/errors.hpp"

namespace bagel::smart_design {

Vector sd_generate(std::span<const BoolDomain> domains, const SmartDesignInstance& inst) {
  if (domains.size() != inst.num_components()) {
    throw DimensionError("sd_generate: one domain per component expected");
  }
  std::vector<int> ub(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) ub[i] = constraints::upper_bound(domains[i]);
  return expand_mask(ub, inst.offsets, inst.x.cols());
}

bool sd_is_leaf(std::span<const BoolDomain> domains, const SmartDesignInstance& inst) {
  if (domains.size() != inst.num_components()) {
    throw DimensionError("sd_is_leaf: one domain per component expected");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (domains[i] != BoolDomain::Zero) worst += inst.components[i].weight;
  }
  return inst.budget().admits(worst);
}

std::vector<engine::Decision> sd_branch(std::span<const BoolDomain> domains) {
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (domains[i] != BoolDomain::Both) continue;
    const std::string name = "u" + std::to_string(i + 1);
    return {{i, 0, name + "=0"}, {i, 1, name + "=1"}};
  }
  throw ContractError("sd_branch: every activation is already fixed");
}

SmartDesignProblem::SmartDesignProblem(const SmartDesignInstance& inst)
    : inst_(&inst), budget_(inst.budget()) {}

SmartDesignProblem::State SmartDesignProblem::root_state() const {
  return State(inst_->num_components(), BoolDomain::Both);
}

bool SmartDesignProblem::prune(State& state) const {
  return !constraints::budget_propagate(state, budget_).failed;
}

void SmartDesignProblem::apply(State& state, const engine::Decision& decision) const {
  constraints::fix(state.at(decision.variable), static_cast<int>(decision.value));
}

SmartDesignProblem::Subproblem SmartDesignProblem::generate(
    const engine::Node<State>& node) const {
  return sd_generate(node.state, *inst_);
}

engine::Trained<SmartDesignProblem::Model> SmartDesignProblem::train(
    const engine::Node<State>&, const Subproblem& mask) const {
  auto fit = numerics::solve_least_squares(inst_->x, inst_->y, mask);
  const double loss = fit.loss;
  return {loss, std::move(fit)};
}

bool SmartDesignProblem::is_leaf(const engine::Node<State>& node, const Model&) const {
  return sd_is_leaf(node.state, *inst_);
}

std::vector<engine::Decision> SmartDesignProblem::branch(const engine::Node<State>& node,
                                                         const Model&) const {
  return sd_branch(node.state);
}

DesignSolution SmartDesignProblem::extract(const engine::Node<State>& node,
                                           const Model& model) const {
  DesignSolution sol;
  sol.u.resize(node.state.size());
  for (std::size_t i = 0; i < node.state.size(); ++i) sol.u[i] = constraints::upper_bound(node.state[i]);
  // The solver already zeroes masked coordinates; theta = theta' o ub(u).
  sol.theta = model.theta;
  sol.train_loss = model.loss;
  return sol;
}

BagelDesignResult solve_bagel(const SmartDesignInstance& inst,
                              const engine::SearchOptions& options) {
  SmartDesignProblem problem(inst);
  auto result = engine::bagel_search(problem, options);
  BagelDesignResult out;
  out.stats = std::move(result.stats);
  if (result.best) out.best = std::move(result.best->solution);
  return out;
}

}  // namespace bagel::smart_design
