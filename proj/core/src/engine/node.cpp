#include "bagel/engine/node.hpp"

#include "bagel/errors.hpp"

namespace bagel::engine {

std::string to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::Open:
      return "open";
    case NodeStatus::Trained:
      return "trained";
    case NodeStatus::Leaf:
      return "leaf";
    case NodeStatus::Pruned:
      return "pruned";
    case NodeStatus::Failed:
      return "failed";
  }
  return "?";
}

bool should_stop(const SearchStats& stats, const StopCondition& stop) {
  if (stop.wall_clock_budget && stats.wall_time >= *stop.wall_clock_budget) return true;
  if (stop.node_budget && stats.nodes_opened >= *stop.node_budget) return true;
  return false;
}

bool bound_prune(double node_loss, std::optional<double> incumbent_loss) {
  return incumbent_loss.has_value() && node_loss >= *incumbent_loss;
}

std::string to_string(Strategy s) { return s == Strategy::DepthFirst ? "dfs" : "best-first"; }

std::string to_string(Pruning p) {
  switch (p) {
    case Pruning::Exact:
      return "exact";
    case Pruning::Heuristic:
      return "heuristic";
    case Pruning::Off:
      return "off";
  }
  return "?";
}

Strategy parse_strategy(const std::string& text) {
  if (text == "dfs") return Strategy::DepthFirst;
  if (text == "best-first") return Strategy::BestFirst;
  throw ValidationError("unknown strategy '" + text + "' (expected dfs or best-first)");
}

Pruning parse_pruning(const std::string& text) {
  if (text == "exact") return Pruning::Exact;
  if (text == "heuristic") return Pruning::Heuristic;
  if (text == "off") return Pruning::Off;
  throw ValidationError("unknown pruning mode '" + text + "' (expected exact, heuristic or off)");
}

}  // namespace bagel::engine
