#ifndef BAGEL_CONSTRAINTS_EXTENDED_TABLE_HPP
#define BAGEL_CONSTRAINTS_EXTENDED_TABLE_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bagel/numerics/matrix.hpp"
#include "bagel/numerics/norms.hpp"

namespace bagel::constraints {

using numerics::Vector;

/// Cost c(y, t) between a variable vector and a table tuple.
///
/// Masked costs read t as a binary support pattern and measure y outside it,
/// ||y o (1 - t)||_p (p = 0 gives the word-count cost). Distance costs are
/// ||y - t||_p.
class CostFn {
 public:
  enum class Kind { Masked, Distance };

  static CostFn masked_l0(double eps = 0.0) { return CostFn(Kind::Masked, 0.0, eps); }
  static CostFn masked_lp(double p) { return CostFn(Kind::Masked, p, 0.0); }
  static CostFn lp_distance(double p) { return CostFn(Kind::Distance, p, 0.0); }

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  double eps() const { return eps_; }

  double operator()(const Vector& y, const Vector& t) const;

 private:
  CostFn(Kind kind, double p, double eps);

  Kind kind_;
  double p_;
  double eps_;
};

/// ET(y, T, c, a): y is valid iff some tuple t in T has c(y, t) <= a.
class ExtendedTable {
 public:
  ExtendedTable(std::size_t arity, std::vector<Vector> tuples, CostFn cost, double threshold);

  std::size_t arity() const { return arity_; }
  const std::vector<Vector>& tuples() const { return tuples_; }
  const CostFn& cost() const { return cost_; }
  double threshold() const { return threshold_; }

 private:
  std::size_t arity_;
  std::vector<Vector> tuples_;
  CostFn cost_;
  double threshold_;
};

struct EtCheck {
  bool satisfied = false;
  std::optional<std::size_t> witness;  // lowest tuple index within the threshold
};

EtCheck et_satisfied(const Vector& y, const ExtendedTable& et);

struct RankedTuple {
  std::size_t index;
  double cost;
  friend bool operator==(const RankedTuple&, const RankedTuple&) = default;
};

/// Every tuple index once, ascending by order_cost(y, t); ties keep index order.
std::vector<RankedTuple> et_rank_tuples(const Vector& y, const ExtendedTable& et,
                                        const CostFn& order_cost);

/// ||theta||_p <= lambda as ET(theta, {0}, ||y - t||_p, lambda).
ExtendedTable encode_norm_ball_as_et(double p, double lambda, std::size_t dim);

}  // namespace bagel::constraints

#endif  // BAGEL_CONSTRAINTS_EXTENDED_TABLE_HPP
