#include "bagel/constraints/extended_table.hpp"

#include <algorithm>
#include <string>

#include "bagel/errors.hpp"

namespace bagel::constraints {

CostFn::CostFn(Kind kind, double p, double eps) : kind_(kind), p_(p), eps_(eps) {
  if (!(p == 0.0 || p >= 1.0)) throw DomainError("CostFn: p must be 0, >= 1 or infinity");
  if (eps < 0.0) throw DomainError("CostFn: eps must be non-negative");
}

double CostFn::operator()(const Vector& y, const Vector& t) const {
  switch (kind_) {
    case Kind::Masked:
      return numerics::masked_lp_cost(y, t, p_, eps_);
    case Kind::Distance:
      return numerics::lp_distance(y, t, p_);
  }
  return 0.0;
}

ExtendedTable::ExtendedTable(std::size_t arity, std::vector<Vector> tuples, CostFn cost,
                             double threshold)
    : arity_(arity), tuples_(std::move(tuples)), cost_(cost), threshold_(threshold) {
  if (threshold_ < 0.0) throw DomainError("ExtendedTable: threshold must be >= 0");
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    if (tuples_[i].size() != arity_) {
      throw DimensionError("ExtendedTable: tuple " + std::to_string(i) + " has length " +
                           std::to_string(tuples_[i].size()) + ", arity is " +
                           std::to_string(arity_));
    }
  }
}

EtCheck et_satisfied(const Vector& y, const ExtendedTable& et) {
  if (y.size() != et.arity()) throw DimensionError("et_satisfied: arity mismatch");
  const auto& tuples = et.tuples();
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (et.cost()(y, tuples[i]) <= et.threshold()) return {true, i};
  }
  return {};
}

std::vector<RankedTuple> et_rank_tuples(const Vector& y, const ExtendedTable& et,
                                        const CostFn& order_cost) {
  if (y.size() != et.arity()) throw DimensionError("et_rank_tuples: arity mismatch");
  std::vector<RankedTuple> ranked;
  ranked.reserve(et.tuples().size());
  for (std::size_t i = 0; i < et.tuples().size(); ++i) {
    ranked.push_back({i, order_cost(y, et.tuples()[i])});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedTuple& a, const RankedTuple& b) { return a.cost < b.cost; });
  return ranked;
}

ExtendedTable encode_norm_ball_as_et(double p, double lambda, std::size_t dim) {
  if (dim == 0) throw DimensionError("encode_norm_ball_as_et: dim must be >= 1");
  return ExtendedTable(dim, {Vector(dim)}, CostFn::lp_distance(p), lambda);
}

}  // namespace bagel::constraints
