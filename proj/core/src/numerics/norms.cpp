#include "bagel/numerics/norms.hpp"

#include <algorithm>
#include <cmath>

#include "bagel/errors.hpp"

namespace bagel::numerics {
namespace {

void check_binary(const Vector& t) {
  for (double x : t) {
    if (x != 0.0 && x != 1.0) throw DomainError("binary tuple expected");
  }
}

void check_p(double p) {
  if (!(p == 0.0 || p >= 1.0)) throw DomainError("p must be 0, >= 1 or infinity");
}

// p-norm over an already-materialised sequence of differences.
template <class Fn>
double pnorm(std::size_t n, double p, Fn&& value_at) {
  if (p == 0.0) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += value_at(i) != 0.0 ? 1 : 0;
    return static_cast<double>(count);
  }
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(value_at(i)));
    return best;
  }
  if (p == 1.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::abs(value_at(i));
    return acc;
  }
  if (p == 2.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += value_at(i) * value_at(i);
    return std::sqrt(acc);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::abs(value_at(i)), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace

std::size_t norm_l0(const Vector& v, double eps) {
  if (eps < 0.0) throw DomainError("norm_l0: eps must be non-negative");
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [eps](double x) { return std::abs(x) > eps; }));
}

std::size_t masked_l0_cost(const Vector& y, const Vector& t, double eps) {
  if (y.size() != t.size()) throw DimensionError("masked_l0_cost: length mismatch");
  if (eps < 0.0) throw DomainError("masked_l0_cost: eps must be non-negative");
  check_binary(t);
  std::size_t count = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (t[i] == 0.0 && std::abs(y[i]) > eps) ++count;
  }
  return count;
}

double masked_lp_cost(const Vector& y, const Vector& t, double p, double eps) {
  if (y.size() != t.size()) throw DimensionError("masked_lp_cost: length mismatch");
  check_binary(t);
  check_p(p);
  if (p == 0.0) return static_cast<double>(masked_l0_cost(y, t, eps));
  return pnorm(y.size(), p, [&](std::size_t i) { return t[i] == 0.0 ? y[i] : 0.0; });
}

double lp_distance(const Vector& y, const Vector& t, double p) {
  if (y.size() != t.size()) throw DimensionError("lp_distance: length mismatch");
  check_p(p);
  return pnorm(y.size(), p, [&](std::size_t i) { return y[i] - t[i]; });
}

}  // namespace bagel::numerics
