#ifndef BAGEL_SMART_DESIGN_SCRIPTED_HPP
#define BAGEL_SMART_DESIGN_SCRIPTED_HPP

#include <map>
#include <string>
#include <vector>

#include "bagel/constraints/budget.hpp"
#include "bagel/engine/search.hpp"

namespace bagel::smart_design {

/// Budgeted component selection whose "training" reads losses from a table
/// keyed by the node trail ("" for the root, "u1=0,u2=1" deeper down).
///
/// Propagation, leaf detection and branching are the real smart-design rules,
/// so the table only replaces the regression. Used to replay hand-worked
/// search traces.
class ScriptedDesignProblem {
 public:
  using State = std::vector<constraints::BoolDomain>;
  using Subproblem = std::string;  // trail key
  using Model = double;
  using Solution = std::vector<int>;  // upper bounds of the activations

  ScriptedDesignProblem(constraints::BudgetConstraint budget, std::map<std::string, double> losses);

  static std::string key(const std::vector<engine::Decision>& trail);

  State root_state() const;
  bool prune(State& state) const;
  void apply(State& state, const engine::Decision& decision) const;
  Subproblem generate(const engine::Node<State>& node) const;
  engine::Trained<Model> train(const engine::Node<State>& node, const Subproblem& key) const;
  bool is_leaf(const engine::Node<State>& node, const Model& model) const;
  std::vector<engine::Decision> branch(const engine::Node<State>& node, const Model& model) const;
  Solution extract(const engine::Node<State>& node, const Model& model) const;

 private:
  constraints::BudgetConstraint budget_;
  std::map<std::string, double> losses_;
};

static_assert(engine::BagelProblem<ScriptedDesignProblem>);

}  // namespace bagel::smart_design

#endif  // BAGEL_SMART_DESIGN_SCRIPTED_HPP
