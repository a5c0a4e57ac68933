#ifndef BAGEL_SMART_DESIGN_PROBLEM_HPP
#define BAGEL_SMART_DESIGN_PROBLEM_HPP

#include <optional>
#include <span>
#include <vector>

#include "bagel/constraints/domains.hpp"
#include "bagel/engine/search.hpp"
#include "bagel/numerics/least_squares.hpp"
#include "bagel/smart_design/instance.hpp"

namespace bagel::smart_design {

using constraints::BoolDomain;

struct DesignSolution {
  std::vector<int> u;
  Vector theta;
  double train_loss = 0.0;
  std::optional<double> test_loss;
};

/// Feature mask of the generated regression: each feature takes the upper
/// bound of its component's activation domain.
Vector sd_generate(std::span<const BoolDomain> domains, const SmartDesignInstance& inst);

/// Every completion of the open domains fits the budget.
bool sd_is_leaf(std::span<const BoolDomain> domains, const SmartDesignInstance& inst);

/// [u_i = 0, u_i = 1] on the lowest-index unfixed activation.
std::vector<engine::Decision> sd_branch(std::span<const BoolDomain> domains);

/// The smart-design problem as seen by the search engine.
class SmartDesignProblem {
 public:
  using State = std::vector<BoolDomain>;
  using Subproblem = Vector;  // feature mask
  using Model = numerics::LeastSquaresFit;
  using Solution = DesignSolution;

  explicit SmartDesignProblem(const SmartDesignInstance& inst);

  State root_state() const;
  bool prune(State& state) const;
  void apply(State& state, const engine::Decision& decision) const;
  Subproblem generate(const engine::Node<State>& node) const;
  engine::Trained<Model> train(const engine::Node<State>& node, const Subproblem& mask) const;
  bool is_leaf(const engine::Node<State>& node, const Model& model) const;
  std::vector<engine::Decision> branch(const engine::Node<State>& node, const Model& model) const;
  Solution extract(const engine::Node<State>& node, const Model& model) const;

 private:
  const SmartDesignInstance* inst_;
  constraints::BudgetConstraint budget_;
};

static_assert(engine::BagelProblem<SmartDesignProblem>);

struct BagelDesignResult {
  std::optional<DesignSolution> best;
  engine::SearchStats stats;
};

BagelDesignResult solve_bagel(const SmartDesignInstance& inst,
                              const engine::SearchOptions& options = {});

}  // namespace bagel::smart_design

#endif  // BAGEL_SMART_DESIGN_PROBLEM_HPP
