#include "bagel/smart_design/scripted.hpp"

#include "bagel/errors.hpp"
#include "bagel/smart_design/problem.hpp"

namespace bagel::smart_design {

ScriptedDesignProblem::ScriptedDesignProblem(constraints::BudgetConstraint budget,
                                             std::map<std::string, double> losses)
    : budget_(std::move(budget)), losses_(std::move(losses)) {}

std::string ScriptedDesignProblem::key(const std::vector<engine::Decision>& trail) {
  std::string out;
  for (const auto& d : trail) {
    if (!out.empty()) out += ',';
    out += d.label;
  }
  return out;
}

ScriptedDesignProblem::State ScriptedDesignProblem::root_state() const {
  return State(budget_.weights.size(), constraints::BoolDomain::Both);
}

bool ScriptedDesignProblem::prune(State& state) const {
  return !constraints::budget_propagate(state, budget_).failed;
}

void ScriptedDesignProblem::apply(State& state, const engine::Decision& decision) const {
  constraints::fix(state.at(decision.variable), static_cast<int>(decision.value));
}

ScriptedDesignProblem::Subproblem ScriptedDesignProblem::generate(
    const engine::Node<State>& node) const {
  return key(node.trail);
}

engine::Trained<ScriptedDesignProblem::Model> ScriptedDesignProblem::train(
    const engine::Node<State>&, const Subproblem& k) const {
  auto it = losses_.find(k);
  if (it == losses_.end()) throw ValidationError("scripted losses have no entry for '" + k + "'");
  return {it->second, it->second};
}

bool ScriptedDesignProblem::is_leaf(const engine::Node<State>& node, const Model&) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < node.state.size(); ++i) {
    if (node.state[i] != constraints::BoolDomain::Zero) worst += budget_.weights[i];
  }
  return budget_.admits(worst);
}

std::vector<engine::Decision> ScriptedDesignProblem::branch(const engine::Node<State>& node,
                                                            const Model&) const {
  return sd_branch(node.state);
}

ScriptedDesignProblem::Solution ScriptedDesignProblem::extract(const engine::Node<State>& node,
                                                               const Model&) const {
  Solution u;
  for (auto d : node.state) u.push_back(constraints::upper_bound(d));
  return u;
}

}  // namespace bagel::smart_design
