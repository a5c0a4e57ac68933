#ifndef BAGEL_ENGINE_SEARCH_HPP
#define BAGEL_ENGINE_SEARCH_HPP

#include <algorithm>
#include <concepts>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "bagel/engine/node.hpp"

namespace bagel::engine {

/// What a constrained learning problem supplies to the search.
///
///  - root_state(): domains of the root node.
///  - prune(state): domain filtering; false when the node has no completion.
///  - apply(state, decision): restricts a copied parent state for a child.
///  - generate(node): builds the restricted learning subproblem.
///  - train(node, subproblem): optimises it; the loss must not decrease along
///    a branch when the problem is monotonic restrictive.
///  - is_leaf(node, model): every model of the subproblem (or the trained
///    optimum) already satisfies the constraints.
///  - branch(node, model): ordered child decisions, first explored first.
///  - extract(node, model): the constraint-satisfying solution at a leaf.
template <class P>
concept BagelProblem = requires(P& p, const P& cp, typename P::State& state,
                                const Node<typename P::State>& node,
                                const typename P::Subproblem& sub,
                                const typename P::Model& model, const Decision& decision) {
  { cp.root_state() } -> std::same_as<typename P::State>;
  { p.prune(state) } -> std::same_as<bool>;
  { cp.apply(state, decision) };
  { p.generate(node) } -> std::same_as<typename P::Subproblem>;
  { p.train(node, sub) } -> std::same_as<Trained<typename P::Model>>;
  { p.is_leaf(node, model) } -> std::same_as<bool>;
  { p.branch(node, model) } -> std::same_as<std::vector<Decision>>;
  { p.extract(node, model) } -> std::same_as<typename P::Solution>;
};

struct SearchOptions {
  StopCondition stop;
  Strategy strategy = Strategy::DepthFirst;
  Pruning pruning = Pruning::Exact;
  /// Children whose trained loss is below the parent's by more than this are
  /// reported as monotonicity warnings.
  double contract_tolerance = 1e-9;
  /// Elapsed time since the search started; defaults to a steady clock.
  std::function<Duration()> elapsed;
  /// Receives one record per closed node.
  std::function<void(const TraceRecord&)> on_node;
};

template <class Solution>
struct SearchResult {
  std::optional<Incumbent<Solution>> best;
  SearchStats stats;
};

namespace detail {

template <class State>
class Frontier {
 public:
  explicit Frontier(Strategy strategy) : strategy_(strategy) {}

  bool empty() const { return nodes_.empty(); }

  // DFS pops the first child next, so children must arrive in branch order.
  void push_children(std::vector<Node<State>> children) {
    if (strategy_ == Strategy::DepthFirst) {
      for (auto it = children.rbegin(); it != children.rend(); ++it) nodes_.push_back(std::move(*it));
    } else {
      for (auto& child : children) {
        nodes_.push_back(std::move(child));
        std::push_heap(nodes_.begin(), nodes_.end(), LaterFirst{});
      }
    }
  }

  Node<State> pop() {
    if (strategy_ == Strategy::BestFirst) {
      std::pop_heap(nodes_.begin(), nodes_.end(), LaterFirst{});
    }
    Node<State> n = std::move(nodes_.back());
    nodes_.pop_back();
    return n;
  }

 private:
  struct LaterFirst {
    bool operator()(const Node<State>& a, const Node<State>& b) const {
      const double ka = a.parent_loss.value_or(-1e300);
      const double kb = b.parent_loss.value_or(-1e300);
      if (ka != kb) return ka > kb;
      return a.id > b.id;
    }
  };

  Strategy strategy_;
  std::vector<Node<State>> nodes_;  // stack for DFS, min-heap on parent loss otherwise
};

}  // namespace detail

/// Branch, generate and learn.
///
/// Each selected node is filtered (prune), its restricted learning problem is
/// generated and trained, and the trained loss is compared with the incumbent.
/// Nodes at or above the incumbent are pruned unless pruning is Off; leaves
/// update the incumbent; other nodes are branched. The loop ends when the
/// frontier is empty (stats.completed) or a stop budget fires.
template <BagelProblem P>
SearchResult<typename P::Solution> bagel_search(P& problem, const SearchOptions& options = {}) {
  using State = typename P::State;
  using Solution = typename P::Solution;

  const auto start = Clock::now();
  auto elapsed = options.elapsed
                     ? options.elapsed
                     : std::function<Duration()>([start] { return Clock::now() - start; });

  SearchResult<Solution> result;
  SearchStats& stats = result.stats;
  std::size_t next_id = 0;

  detail::Frontier<State> frontier(options.strategy);
  {
    Node<State> root;
    root.id = next_id++;
    root.state = problem.root_state();
    std::vector<Node<State>> roots;
    roots.push_back(std::move(root));
    frontier.push_children(std::move(roots));
  }

  auto close = [&](const Node<State>& node) {
    if (!options.on_node) return;
    TraceRecord record{node.id, node.depth, {}, node.loss, node.status};
    for (const auto& d : node.trail) record.trail.push_back(d.label);
    options.on_node(record);
  };

  auto incumbent_loss = [&]() -> std::optional<double> {
    if (!result.best) return std::nullopt;
    return result.best->loss;
  };

  while (true) {
    stats.wall_time = elapsed();
    if (frontier.empty()) {
      stats.completed = true;
      break;
    }
    if (should_stop(stats, options.stop)) break;

    Node<State> node = frontier.pop();
    ++stats.nodes_opened;

    if (!problem.prune(node.state)) {
      node.status = NodeStatus::Failed;
      ++stats.nodes_failed;
      close(node);
      continue;
    }

    const auto sub = problem.generate(node);
    auto trained = problem.train(node, sub);
    node.loss = trained.loss;
    node.status = NodeStatus::Trained;

    if (node.parent_loss && trained.loss < *node.parent_loss - options.contract_tolerance) {
      std::ostringstream msg;
      msg << "node " << node.id << ": trained loss " << trained.loss
          << " is below its parent's " << *node.parent_loss;
      stats.warnings.push_back(msg.str());
    }

    if (options.pruning != Pruning::Off && bound_prune(trained.loss, incumbent_loss())) {
      node.status = NodeStatus::Pruned;
      ++stats.nodes_pruned;
      close(node);
      continue;
    }

    if (problem.is_leaf(node, trained.model)) {
      node.status = NodeStatus::Leaf;
      ++stats.leaves;
      if (!result.best || trained.loss < result.best->loss) {
        result.best.emplace(Incumbent<Solution>{node.id, trained.loss,
                                                problem.extract(node, trained.model)});
      }
      close(node);
      continue;
    }

    std::vector<Node<State>> children;
    for (auto& decision : problem.branch(node, trained.model)) {
      Node<State> child;
      child.id = next_id++;
      child.depth = node.depth + 1;
      child.parent = node.id;
      child.trail = node.trail;
      child.state = node.state;
      problem.apply(child.state, decision);
      child.trail.push_back(std::move(decision));
      child.parent_loss = trained.loss;
      children.push_back(std::move(child));
    }
    close(node);
    frontier.push_children(std::move(children));
  }

  return result;
}

}  // namespace bagel::engine

#endif  // BAGEL_ENGINE_SEARCH_HPP
