#ifndef BAGEL_ENGINE_NODE_HPP
#define BAGEL_ENGINE_NODE_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bagel::engine {

/// A branching decision. `value` is 0/1 for boolean fixings and the chosen
/// index for integer assignments.
struct Decision {
  std::size_t variable = 0;
  std::int64_t value = 0;
  std::string label;
  friend bool operator==(const Decision&, const Decision&) = default;
};

enum class NodeStatus { Open, Trained, Leaf, Pruned, Failed };

std::string to_string(NodeStatus status);

template <class State>
struct Node {
  std::size_t id = 0;
  std::size_t depth = 0;
  std::optional<std::size_t> parent;
  std::vector<Decision> trail;
  State state;
  std::optional<double> parent_loss;
  std::optional<double> loss;
  NodeStatus status = NodeStatus::Open;
};

/// Trained generated subproblem: its loss and the problem-specific model.
template <class Model>
struct Trained {
  double loss;
  Model model;
};

template <class Solution>
struct Incumbent {
  std::size_t node_id;
  double loss;
  Solution solution;
};

using Clock = std::chrono::steady_clock;
using Duration = std::chrono::nanoseconds;

struct StopCondition {
  std::optional<Duration> wall_clock_budget;
  std::optional<std::size_t> node_budget;
};

struct SearchStats {
  std::size_t nodes_opened = 0;
  std::size_t nodes_pruned = 0;
  std::size_t nodes_failed = 0;
  std::size_t leaves = 0;
  Duration wall_time{0};
  bool completed = false;
  std::vector<std::string> warnings;
};

/// true once the wall-clock or node budget is reached (inclusive thresholds).
bool should_stop(const SearchStats& stats, const StopCondition& stop);

/// Bound test: prune iff an incumbent exists and node_loss >= its loss.
bool bound_prune(double node_loss, std::optional<double> incumbent_loss);

enum class Strategy { DepthFirst, BestFirst };
enum class Pruning { Exact, Heuristic, Off };

std::string to_string(Strategy s);
std::string to_string(Pruning p);
Strategy parse_strategy(const std::string& text);
Pruning parse_pruning(const std::string& text);

/// One line of the node trace, emitted when a node is closed.
struct TraceRecord {
  std::size_t id;
  std::size_t depth;
  std::vector<std::string> trail;
  std::optional<double> loss;
  NodeStatus status;
};

}  // namespace bagel::engine

#endif  // BAGEL_ENGINE_NODE_HPP
