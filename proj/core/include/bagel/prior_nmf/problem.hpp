#ifndef BAGEL_PRIOR_NMF_PROBLEM_HPP
#define BAGEL_PRIOR_NMF_PROBLEM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bagel/constraints/domains.hpp"
#include "bagel/constraints/extended_table.hpp"
#include "bagel/engine/search.hpp"
#include "bagel/numerics/nmf.hpp"
#include "bagel/prior_nmf/instance.hpp"

namespace bagel::prior_nmf {

using constraints::IntDomain;
/// s_i domains: candidate database topics for each column of W.
using TopicAssignment = std::vector<IntDomain>;

struct TrainSettings {
  std::size_t iters = 1000;
  std::size_t restarts = 1;
};

/// Column mask T^n (words x k). A column whose domain is still the whole
/// database is all ones; otherwise it is the OR of the candidate topics.
Matrix nmf_build_mask(std::span<const IntDomain> assignment, const TopicDB& db);

/// Seed of a node's training runs, derived from the instance seed and trail.
std::uint64_t node_seed(std::uint64_t instance_seed, std::span<const engine::Decision> trail);

/// Masked NMF on T^n, `restarts` times from seeds derived from `seed`; the
/// lowest loss wins (earliest restart on ties).
numerics::NmfResult nmf_generate_and_train(std::span<const IntDomain> assignment,
                                           const NmfInstance& inst, const TrainSettings& settings,
                                           std::uint64_t seed);

/// All domains are singletons holding pairwise distinct topics.
bool nmf_is_leaf(std::span<const IntDomain> assignment);

/// Decisions s_i = j on the lowest non-singleton column, one per candidate that
/// survives alldifferent filtering, ordered by ||w_i o (1 - t_j)||_2 (ties by j).
std::vector<engine::Decision> nmf_branch(const Matrix& w, std::span<const IntDomain> assignment,
                                         const TopicDB& db);

/// Fraction of the selected topics that belong to the planted set.
double nmf_topic_recovery(std::span<const std::size_t> selected,
                          std::span<const std::size_t> planted);

/// The masked-l0 table constraint every column of W must satisfy.
constraints::ExtendedTable topic_table(const TopicDB& db);

struct NmfSolution {
  std::vector<std::size_t> topics;
  Matrix w;
  Matrix h;
  double loss = 0.0;
};

class PriorNmfProblem {
 public:
  using State = TopicAssignment;
  using Subproblem = Matrix;  // T^n
  using Model = numerics::NmfResult;
  using Solution = NmfSolution;

  PriorNmfProblem(const NmfInstance& inst, TrainSettings settings);

  State root_state() const;
  bool prune(State& state) const;
  void apply(State& state, const engine::Decision& decision) const;
  Subproblem generate(const engine::Node<State>& node) const;
  engine::Trained<Model> train(const engine::Node<State>& node, const Subproblem& mask) const;
  bool is_leaf(const engine::Node<State>& node, const Model& model) const;
  std::vector<engine::Decision> branch(const engine::Node<State>& node, const Model& model) const;
  Solution extract(const engine::Node<State>& node, const Model& model) const;

  const NmfInstance& instance() const { return *inst_; }
  const TrainSettings& settings() const { return settings_; }

 private:
  const NmfInstance* inst_;
  TrainSettings settings_;
};

static_assert(engine::BagelProblem<PriorNmfProblem>);

/// The node the search reaches by assigning the planted topics column by
/// column, with its trained subproblem.
struct PlantedLeaf {
  std::vector<engine::Decision> trail;
  TopicAssignment assignment;
  numerics::NmfResult trained;
};

/// Requires an instance with a complete planted assignment (novelty 0).
PlantedLeaf train_planted_leaf(const NmfInstance& inst, const TrainSettings& settings);

struct NmfSolveResult {
  std::optional<NmfSolution> best;
  engine::SearchStats stats;
};

NmfSolveResult solve_prior_nmf(const NmfInstance& inst, const TrainSettings& settings,
                               const engine::SearchOptions& options = {});

}  // namespace bagel::prior_nmf

#endif  // BAGEL_PRIOR_NMF_PROBLEM_HPP
