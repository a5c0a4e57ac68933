#include "bagel/prior_nmf/problem.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "bagel/constraints/alldifferent.hpp"
#include "bagel/errors.hpp"
#include "bagel/numerics/rng.hpp"

namespace bagel::prior_nmf {
namespace {

constexpr std::uint64_t kNodeStream = 0x6e6d66ULL;

engine::Decision make_decision(std::size_t column, std::size_t topic) {
  return {column, static_cast<std::int64_t>(topic),
          "s" + std::to_string(column + 1) + "=" + std::to_string(topic + 1)};
}

}  // namespace

Matrix nmf_build_mask(std::span<const IntDomain> assignment, const TopicDB& db) {
  const std::size_t n = db.n_words();
  Matrix mask(n, assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const auto& dom = assignment[i];
    if (dom.empty()) throw ContractError("nmf_build_mask: empty domain for column " + std::to_string(i));
    if (dom.size() >= db.size()) {
      for (std::size_t r = 0; r < n; ++r) mask(r, i) = 1.0;
      continue;
    }
    for (std::size_t j : dom) {
      if (j >= db.size()) throw ContractError("nmf_build_mask: topic index out of range");
      const Vector& t = db[j];
      for (std::size_t r = 0; r < n; ++r) {
        if (t[r] == 1.0) mask(r, i) = 1.0;
      }
    }
  }
  return mask;
}

std::uint64_t node_seed(std::uint64_t instance_seed, std::span<const engine::Decision> trail) {
  std::uint64_t h = numerics::hash_combine(instance_seed, kNodeStream);
  for (const auto& d : trail) {
    h = numerics::hash_combine(h, d.variable);
    h = numerics::hash_combine(h, static_cast<std::uint64_t>(d.value));
  }
  return h;
}

numerics::NmfResult nmf_generate_and_train(std::span<const IntDomain> assignment,
                                           const NmfInstance& inst, const TrainSettings& settings,
                                           std::uint64_t seed) {
  if (settings.restarts == 0) throw ValidationError("restarts must be at least 1");
  const Matrix mask = nmf_build_mask(assignment, inst.db);
  numerics::NmfOptions opts;
  opts.iters = settings.iters;

  std::optional<numerics::NmfResult> best;
  for (std::size_t r = 0; r < settings.restarts; ++r) {
    numerics::Rng rng(r == 0 ? seed : numerics::hash_combine(seed, r));
    auto run = numerics::nmf_multiplicative(inst.a, assignment.size(), mask, rng, opts);
    if (!best || run.loss < best->loss) best = std::move(run);
  }
  return std::move(*best);
}

bool nmf_is_leaf(std::span<const IntDomain> assignment) {
  std::set<std::size_t> used;
  for (const auto& d : assignment) {
    if (!d.is_singleton()) return false;
    if (!used.insert(d.value()).second) return false;
  }
  return true;
}

constraints::ExtendedTable topic_table(const TopicDB& db) {
  return constraints::ExtendedTable(db.n_words(), db.topics(), constraints::CostFn::masked_l0(), 0.0);
}

std::vector<engine::Decision> nmf_branch(const Matrix& w, std::span<const IntDomain> assignment,
                                         const TopicDB& db) {
  if (w.cols() != assignment.size() || w.rows() != db.n_words()) {
    throw DimensionError("nmf_branch: W does not match the assignment");
  }
  std::size_t column = assignment.size();
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (!assignment[i].is_singleton()) {
      column = i;
      break;
    }
  }
  if (column == assignment.size()) return {};

  std::vector<std::size_t> candidates;
  for (std::size_t j : assignment[column]) {
    std::vector<IntDomain> trial(assignment.begin(), assignment.end());
    trial[column].assign(j);
    if (!constraints::alldifferent_filter(trial).failed) candidates.push_back(j);
  }
  if (candidates.empty()) return {};

  std::vector<Vector> tuples;
  for (std::size_t j : candidates) tuples.push_back(db[j]);
  const constraints::ExtendedTable sub(db.n_words(), std::move(tuples),
                                       constraints::CostFn::masked_l0(), 0.0);
  const auto ranked = constraints::et_rank_tuples(w.column(column), sub,
                                                  constraints::CostFn::masked_lp(2.0));
  std::vector<engine::Decision> out;
  out.reserve(ranked.size());
  for (const auto& r : ranked) out.push_back(make_decision(column, candidates[r.index]));
  return out;
}

double nmf_topic_recovery(std::span<const std::size_t> selected,
                          std::span<const std::size_t> planted) {
  if (selected.empty()) return 0.0;
  const std::set<std::size_t> truth(planted.begin(), planted.end());
  const std::set<std::size_t> chosen(selected.begin(), selected.end());
  std::size_t hits = 0;
  for (std::size_t s : chosen) hits += truth.count(s);
  return static_cast<double>(hits) / static_cast<double>(chosen.size());
}

PriorNmfProblem::PriorNmfProblem(const NmfInstance& inst, TrainSettings settings)
    : inst_(&inst), settings_(settings) {}

PriorNmfProblem::State PriorNmfProblem::root_state() const {
  return State(inst_->k, IntDomain::full(inst_->db.size()));
}

bool PriorNmfProblem::prune(State& state) const {
  return !constraints::alldifferent_filter(state).failed;
}

void PriorNmfProblem::apply(State& state, const engine::Decision& decision) const {
  state.at(decision.variable).assign(static_cast<std::size_t>(decision.value));
}

PriorNmfProblem::Subproblem PriorNmfProblem::generate(const engine::Node<State>& node) const {
  return nmf_build_mask(node.state, inst_->db);
}

engine::Trained<PriorNmfProblem::Model> PriorNmfProblem::train(const engine::Node<State>& node,
                                                               const Subproblem&) const {
  auto result = nmf_generate_and_train(node.state, *inst_, settings_, node_seed(inst_->seed, node.trail));
  const double loss = result.loss;
  return {loss, std::move(result)};
}

bool PriorNmfProblem::is_leaf(const engine::Node<State>& node, const Model&) const {
  return nmf_is_leaf(node.state);
}

std::vector<engine::Decision> PriorNmfProblem::branch(const engine::Node<State>& node,
                                                      const Model& model) const {
  return nmf_branch(model.w, node.state, inst_->db);
}

NmfSolution PriorNmfProblem::extract(const engine::Node<State>& node, const Model& model) const {
  NmfSolution sol;
  for (const auto& d : node.state) sol.topics.push_back(d.value());
  sol.w = model.w;
  sol.h = model.h;
  sol.loss = model.loss;
  return sol;
}

PlantedLeaf train_planted_leaf(const NmfInstance& inst, const TrainSettings& settings) {
  if (!inst.planted || inst.planted->topics.size() != inst.k) {
    throw ValidationError("train_planted_leaf: instance has no complete planted assignment");
  }
  PriorNmfProblem problem(inst, settings);
  PlantedLeaf leaf;
  leaf.assignment = problem.root_state();
  // Mirror the search: fix the lowest open column after each filtering pass.
  while (true) {
    if (!problem.prune(leaf.assignment)) {
      throw ContractError("train_planted_leaf: planted assignment violates alldifferent");
    }
    std::size_t column = inst.k;
    for (std::size_t i = 0; i < inst.k; ++i) {
      if (!leaf.assignment[i].is_singleton()) {
        column = i;
        break;
      }
    }
    if (column == inst.k) break;
    auto d = make_decision(column, inst.planted->topics[column]);
    problem.apply(leaf.assignment, d);
    leaf.trail.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < inst.k; ++i) {
    if (leaf.assignment[i].value() != inst.planted->topics[i]) {
      throw ContractError("train_planted_leaf: filtering moved a planted column");
    }
  }
  leaf.trained = nmf_generate_and_train(leaf.assignment, inst, settings,
                                        node_seed(inst.seed, leaf.trail));
  return leaf;
}

NmfSolveResult solve_prior_nmf(const NmfInstance& inst, const TrainSettings& settings,
                               const engine::SearchOptions& options) {
  PriorNmfProblem problem(inst, settings);
  auto result = engine::bagel_search(problem, options);
  NmfSolveResult out;
  out.stats = std::move(result.stats);
  if (result.best) out.best = std::move(result.best->solution);
  return out;
}

}  // namespace bagel::prior_nmf
