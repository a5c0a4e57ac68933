#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "bagel/constraints/budget.hpp"
#include "bagel/errors.hpp"
#include "bagel/numerics/least_squares.hpp"
#include "bagel/numerics/rng.hpp"
#include "bagel/smart_design/baselines.hpp"
#include "bagel/smart_design/experiment.hpp"
#include "bagel/smart_design/instance.hpp"
#include "bagel/smart_design/problem.hpp"
#include "support/oracles.hpp"

namespace bagel::smart_design {
namespace {

using D = BoolDomain;

SmartDesignInstance shrunk_toy() {
  // Components (3,10), (2,6), (2,5), (1,1); B = 12.
  numerics::Rng rng(1);
  Matrix x(12, 8);
  for (double& v : x.values()) v = rng.normal();
  Vector y(12);
  for (std::size_t i = 0; i < 12; ++i) y[i] = rng.normal();
  return SmartDesignInstance::make(x, y, {{3, 10}, {2, 6}, {2, 5}, {1, 1}}, 12.0);
}

std::vector<std::vector<double>> rows_of(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r].assign(m.row(r).begin(), m.row(r).end());
  return out;
}

TEST(Instance, OffsetsPartitionFeatures) {
  const auto inst = shrunk_toy();
  EXPECT_EQ(inst.offsets, (std::vector<FeatureRange>{{0, 3}, {3, 5}, {5, 7}, {7, 8}}));
  EXPECT_EQ(inst.weights(), (Vector{10, 6, 5, 1}));
  EXPECT_THROW(SmartDesignInstance::make(Matrix(3, 4), Vector(3), {{3, 1}}, 1.0), DimensionError);
  EXPECT_THROW(SmartDesignInstance::make(Matrix(3, 1), Vector(3), {{1, 1}}, 0.0), ValidationError);
  EXPECT_THROW(SmartDesignInstance::make(Matrix(3, 1), Vector(2), {{1, 1}}, 1.0), DimensionError);
}

TEST(Generate, MaskFollowsUpperBounds) {
  const auto inst = shrunk_toy();
  EXPECT_EQ(sd_generate(std::vector<D>(4, D::Both), inst), Vector(8, 1.0));
  EXPECT_EQ(sd_generate(std::vector<D>{D::Zero, D::Both, D::Both, D::Both}, inst),
            (Vector{0, 0, 0, 1, 1, 1, 1, 1}));
  EXPECT_EQ(sd_generate(std::vector<D>{D::One, D::Zero, D::Both, D::Zero}, inst),
            (Vector{1, 1, 1, 0, 0, 1, 1, 0}));
}

TEST(Generate, AllZeroGivesTargetNorm) {
  const auto inst = shrunk_toy();
  SmartDesignProblem problem(inst);
  engine::Node<SmartDesignProblem::State> node;
  node.state.assign(4, D::Zero);
  const auto mask = problem.generate(node);
  EXPECT_EQ(mask, Vector(8));
  const auto trained = problem.train(node, mask);
  EXPECT_DOUBLE_EQ(trained.loss, numerics::norm2(inst.y));
  const auto sol = problem.extract(node, trained.model);
  EXPECT_EQ(sol.theta, Vector(8));
  EXPECT_EQ(sol.u, (std::vector<int>{0, 0, 0, 0}));
}

TEST(Leaf, Examples) {
  const auto inst = shrunk_toy();
  EXPECT_TRUE(sd_is_leaf(std::vector<D>{D::Zero, D::Zero, D::Both, D::Both}, inst));
  EXPECT_FALSE(sd_is_leaf(std::vector<D>(4, D::Both), inst));
  EXPECT_TRUE(sd_is_leaf(std::vector<D>{D::One, D::Zero, D::Zero, D::One}, inst));
  EXPECT_FALSE(sd_is_leaf(std::vector<D>{D::Zero, D::One, D::One, D::One}, inst));
}

TEST(Branch, LowestUnfixedZeroThenOne) {
  const auto all = sd_branch(std::vector<D>(4, D::Both));
  ASSERT_EQ(all.size(), 2U);
  EXPECT_EQ(all[0], (engine::Decision{0, 0, "u1=0"}));
  EXPECT_EQ(all[1], (engine::Decision{0, 1, "u1=1"}));
  EXPECT_EQ(sd_branch(std::vector<D>{D::One, D::Both, D::Both, D::Both})[0].variable, 1U);
  const auto last = sd_branch(std::vector<D>{D::One, D::Zero, D::Zero, D::Both});
  EXPECT_EQ(last[0].label, "u4=0");
  EXPECT_EQ(last[1].label, "u4=1");
  EXPECT_THROW(sd_branch(std::vector<D>{D::One, D::Zero}), ContractError);
}

TEST(Tightness, Examples) {
  const Vector w{10, 6, 5, 1};
  EXPECT_DOUBLE_EQ(sd_tightness(std::vector<int>{1, 0, 0, 1}, w, 12.0), 11.0 / 12.0);
  EXPECT_DOUBLE_EQ(sd_tightness(std::vector<int>{0, 0, 0, 0}, w, 12.0), 0.0);
  EXPECT_DOUBLE_EQ(sd_tightness(std::vector<int>{0, 1, 1, 0}, w, 12.0), 11.0 / 12.0);
  EXPECT_THROW(sd_tightness(std::vector<int>{1}, w, 12.0), DimensionError);
}

TEST(Evaluate, Examples) {
  SmartDesignParams p;
  p.features = 10;
  p.noise_factor = 0.0;
  p.seed = 7;
  const auto gen = sd_generate_instance(p);
  DesignSolution truth{gen.planted_u, gen.theta_star, 0.0, std::nullopt};
  EXPECT_NEAR(sd_evaluate(truth, gen.instance.x, gen.instance.y), 0.0, 1e-9);

  DesignSolution zero{std::vector<int>(gen.planted_u.size(), 0), Vector(10), 0.0, std::nullopt};
  EXPECT_DOUBLE_EQ(sd_evaluate(zero, gen.instance.x, gen.instance.y), numerics::norm2(gen.instance.y));

  numerics::Rng rng(3);
  Vector theta(10);
  for (std::size_t j = 0; j < 10; ++j) theta[j] = rng.normal();
  DesignSolution some{gen.planted_u, theta, 0.0, std::nullopt};
  std::vector<double> coef(theta.begin(), theta.end());
  EXPECT_NEAR(sd_evaluate(some, gen.instance.x, gen.instance.y),
              testing::residual_norm(rows_of(gen.instance.x), coef, gen.instance.y.raw()), 1e-10);
  EXPECT_THROW(sd_evaluate(some, Matrix(3, 4), Vector(3)), DimensionError);
}

TEST(Generator, ShapesAndDeterminism) {
  SmartDesignParams p;
  p.features = 10;
  p.samples = 100;
  p.cost_percent = 0.6;
  p.seed = 7;
  const auto a = sd_generate_instance(p);
  const auto b = sd_generate_instance(p);
  EXPECT_EQ(a.instance.x.rows(), 100U);
  EXPECT_EQ(a.instance.x.cols(), 10U);
  EXPECT_EQ(a.instance.y.size(), 100U);
  EXPECT_EQ(a.instance.x, b.instance.x);
  EXPECT_EQ(a.instance.y, b.instance.y);
  EXPECT_EQ(a.instance.components, b.instance.components);
  EXPECT_EQ(a.instance.bound, b.instance.bound);
  EXPECT_EQ(a.theta_star, b.theta_star);

  p.seed = 8;
  EXPECT_NE(sd_generate_instance(p).instance.y, a.instance.y);
}

TEST(Generator, InvariantsAcrossTheGrid) {
  for (std::size_t features : {10, 20, 40}) {
    for (double cost : {0.3, 0.6, 0.8, 0.9}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SmartDesignParams p;
        p.features = features;
        p.samples = 50;
        p.cost_percent = cost;
        p.seed = seed;
        const auto gen = sd_generate_instance(p);
        const auto& inst = gen.instance;
        EXPECT_EQ(inst.num_components(), std::min<std::size_t>(features, kDefaultMaxComponents));
        std::size_t total = 0;
        double weight_sum = 0.0;
        for (const auto& c : inst.components) {
          EXPECT_GE(c.input_size, 1U);
          EXPECT_GE(c.weight, 1.0);
          EXPECT_LE(c.weight, 10.0);
          total += c.input_size;
          weight_sum += c.weight;
        }
        EXPECT_EQ(total, features);
        EXPECT_DOUBLE_EQ(inst.bound, cost * weight_sum);
        EXPECT_TRUE(inst.budget().satisfied(gen.planted_u));
        const Vector mask = expand_mask(gen.planted_u, inst.offsets, features);
        for (std::size_t j = 0; j < features; ++j) {
          if (mask[j] == 0.0) {
            EXPECT_EQ(gen.theta_star[j], 0.0);
          }
        }
      }
    }
  }
}

TEST(Generator, Validation) {
  SmartDesignParams p;
  p.cost_percent = 1.5;
  EXPECT_THROW(validate(p), ValidationError);
  p.cost_percent = 0.0;
  EXPECT_THROW(validate(p), ValidationError);
  p = {};
  p.components = 11;
  EXPECT_THROW(validate(p), ValidationError);
  p = {};
  p.features = 12;
  EXPECT_FALSE(grid_warnings(p).empty());
  p.features = 10;
  EXPECT_TRUE(grid_warnings(p).empty());
}

// Greedy repairs coded against the description, using the test-only solver.
struct ScalarOracle {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  std::vector<double> w;
  double bound;

  std::vector<double> fit(const std::vector<int>& u) const {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (u[j]) cols.push_back(j);
    std::vector<double> theta(u.size(), 0.0);
    if (cols.empty()) return theta;
    std::vector<std::vector<double>> sub(x.size(), std::vector<double>(cols.size()));
    for (std::size_t r = 0; r < x.size(); ++r)
      for (std::size_t j = 0; j < cols.size(); ++j) sub[r][j] = x[r][cols[j]];
    const auto coef = testing::normal_equations(sub, y);
    for (std::size_t j = 0; j < cols.size(); ++j) theta[cols[j]] = (*coef)[j];
    return theta;
  }
  double used(const std::vector<int>& u) const {
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * w[j];
    return s;
  }
  std::vector<int> basic_repair() const {
    std::vector<int> u(w.size(), 1);
    const auto theta = fit(u);
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return std::abs(theta[a]) < std::abs(theta[b]); });
    for (std::size_t j : order) {
      if (used(u) < bound) break;
      u[j] = 0;
    }
    return u;
  }
  std::vector<int> ratio_repair() const {
    std::vector<int> u(w.size(), 1);
    while (!(used(u) < bound)) {
      const auto theta = fit(u);
      std::size_t drop = w.size();
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (!u[j]) continue;
        if (drop == w.size() || std::abs(theta[j]) / w[j] < std::abs(theta[drop]) / w[drop]) drop = j;
      }
      u[drop] = 0;
    }
    return u;
  }
};

TEST(Baselines, MatchGreedyOraclesOnScalarInstances) {
  numerics::Rng rng(2718);
  std::size_t differing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3;
    const std::size_t m = 20;
    Matrix x(m, k);
    for (double& v : x.values()) v = rng.normal();
    Vector theta(k);
    for (std::size_t j = 0; j < k; ++j) theta[j] = rng.normal(0.0, 2.0);
    Vector y = multiply(x, theta);
    for (std::size_t i = 0; i < m; ++i) y[i] += 0.3 * rng.normal();
    std::vector<Component> comps;
    std::vector<double> w;
    for (std::size_t j = 0; j < k; ++j) {
      w.push_back(std::floor(rng.uniform(1.0, 10.0)));
      comps.push_back({1, w.back()});
    }
    const double bound = std::accumulate(w.begin(), w.end(), 0.0) * rng.uniform(0.3, 0.95);
    const auto inst = SmartDesignInstance::make(x, y, comps, bound);
    const ScalarOracle oracle{rows_of(x), y.raw(), w, bound};

    const auto br = baseline_l2_br(inst);
    const auto orr = baseline_l2_or(inst);
    EXPECT_EQ(br.u, oracle.basic_repair());
    EXPECT_EQ(orr.u, oracle.ratio_repair());
    const auto br_theta = oracle.fit(br.u);
    for (std::size_t j = 0; j < k; ++j) EXPECT_NEAR(br.theta[j], br_theta[j], 1e-8);
    EXPECT_TRUE(inst.budget().satisfied(br.u));
    EXPECT_TRUE(inst.budget().satisfied(orr.u));
    differing += br.u != orr.u;
  }
  // The two repairs are genuinely different procedures.
  EXPECT_GT(differing, 0U);
}

TEST(Baselines, FeasibleFullModelIsPlainLeastSquares) {
  const auto inst = SmartDesignInstance::make(shrunk_toy().x, shrunk_toy().y,
                                              {{3, 1}, {2, 1}, {2, 1}, {1, 1}}, 100.0);
  const auto full = numerics::solve_least_squares(inst.x, inst.y, Vector(8, 1.0));
  for (const auto& sol : {baseline_l2_br(inst), baseline_l2_or(inst)}) {
    EXPECT_EQ(sol.u, (std::vector<int>{1, 1, 1, 1}));
    EXPECT_EQ(sol.theta, full.theta);
    EXPECT_EQ(sol.train_loss, full.loss);
  }
}

TEST(Baselines, TinyBudgetDropsEverything) {
  const auto toy = shrunk_toy();
  const auto inst = SmartDesignInstance::make(toy.x, toy.y, toy.components, 0.5);
  for (const auto& sol : {baseline_l2_br(inst), baseline_l2_or(inst)}) {
    EXPECT_EQ(sol.u, (std::vector<int>{0, 0, 0, 0}));
    EXPECT_EQ(sol.theta, Vector(8));
    EXPECT_DOUBLE_EQ(sol.train_loss, numerics::norm2(inst.y));
  }
}

TEST(Baselines, EqualWeightsSingleRemovalAgree) {
  numerics::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix x(30, 4);
    for (double& v : x.values()) v = rng.normal();
    Vector y(30);
    for (std::size_t i = 0; i < 30; ++i) y[i] = rng.normal();
    // Equal weights, room for three of four: one removal repairs both.
    const auto inst = SmartDesignInstance::make(x, y, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}, 7.0);
    const auto br = baseline_l2_br(inst);
    const auto orr = baseline_l2_or(inst);
    EXPECT_EQ(br.u, orr.u);
    EXPECT_EQ(br.theta, orr.theta);
  }
}

TEST(Baselines, L2AggregationScoresBlocks) {
  const std::vector<FeatureRange> ranges{{0, 2}, {2, 3}};
  const Vector theta{3, -4, 1};
  EXPECT_EQ(component_scores(theta, ranges), (Vector{4, 1}));
  EXPECT_EQ(component_scores(theta, ranges, ScoreAggregation::L2), (Vector{5, 1}));
}

TEST(Search, MatchesBruteForceOptimum) {
  numerics::Rng pick(12);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    SmartDesignParams p;
    p.components = 2 + pick.below(7);
    p.features = p.components + pick.below(10);
    p.samples = 30 + pick.below(40);
    p.cost_percent = 0.2 + 0.7 * pick.uniform();
    p.seed = seed;
    const auto inst = sd_generate_instance(p).instance;
    std::vector<std::size_t> sizes;
    std::vector<double> w;
    for (const auto& c : inst.components) {
      sizes.push_back(c.input_size);
      w.push_back(c.weight);
    }
    const auto oracle = testing::brute_force_subset(rows_of(inst.x), inst.y.raw(), sizes, w, inst.bound);
    const auto got = solve_bagel(inst);
    ASSERT_TRUE(got.best);
    EXPECT_TRUE(got.stats.completed);
    EXPECT_LE(std::abs(got.best->train_loss - oracle.loss), 1e-9 * std::max(1.0, oracle.loss))
        << "seed " << seed;

    // Budget holds and features of inactive components stay at zero.
    EXPECT_TRUE(inst.budget().satisfied(got.best->u));
    const Vector mask = expand_mask(got.best->u, inst.offsets, inst.x.cols());
    for (std::size_t j = 0; j < mask.size(); ++j) {
      if (mask[j] == 0.0) {
        EXPECT_EQ(got.best->theta[j], 0.0);
      }
    }

    // Dominance over both repairs.
    EXPECT_LE(got.best->train_loss, baseline_l2_br(inst).train_loss + 1e-9);
    EXPECT_LE(got.best->train_loss, baseline_l2_or(inst).train_loss + 1e-9);
  }
}

TEST(Folds, PartitionSamples) {
  const auto splits = kfold_splits(23, 5, 99);
  ASSERT_EQ(splits.size(), 5U);
  std::multiset<std::size_t> tested;
  for (const auto& s : splits) {
    EXPECT_EQ(s.train.size() + s.test.size(), 23U);
    std::set<std::size_t> all(s.train.begin(), s.train.end());
    for (auto t : s.test) {
      EXPECT_FALSE(all.count(t));
      tested.insert(t);
    }
    EXPECT_GE(s.test.size(), 4U);
    EXPECT_LE(s.test.size(), 5U);
  }
  EXPECT_EQ(tested.size(), 23U);
  EXPECT_EQ(std::set<std::size_t>(tested.begin(), tested.end()).size(), 23U);
  EXPECT_EQ(kfold_splits(23, 5, 99)[2].test, splits[2].test);
  EXPECT_THROW(kfold_splits(3, 5, 1), ValidationError);
}

TEST(Experiment, RowsAreFoldMajorAndFeasible) {
  SmartDesignParams p;
  p.features = 10;
  p.samples = 100;
  p.seed = 4;
  const auto inst = sd_generate_instance(p).instance;
  ExperimentSettings settings;
  const auto rows = run_experiment(inst, settings);
  ASSERT_EQ(rows.size(), 15U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].fold, i / 3);
    EXPECT_EQ(rows[i].method, static_cast<Method>(i % 3));
    EXPECT_GE(rows[i].tightness, 0.0);
    EXPECT_LT(rows[i].tightness, 1.0);
    EXPECT_TRUE(std::isfinite(rows[i].test_loss));
    if (rows[i].method == Method::Bagel) {
      EXPECT_TRUE(rows[i].completed);
      EXPECT_LE(rows[i].train_loss, rows[i + 1].train_loss + 1e-9);
      EXPECT_LE(rows[i].train_loss, rows[i + 2].train_loss + 1e-9);
    }
  }
  EXPECT_EQ(to_string(Method::L2Or), "l2_or");
}

}  // namespace
}  // namespace bagel::smart_design
