#include "bagel/constraints/domains.hpp"

#include <algorithm>
#include <numeric>

#include "bagel/errors.hpp"

namespace bagel::constraints {

void fix(BoolDomain& d, int value) {
  const BoolDomain target = value == 0 ? BoolDomain::Zero : BoolDomain::One;
  if (value != 0 && value != 1) throw ContractError("fix: value must be 0 or 1");
  if (d == target) return;
  if (d != BoolDomain::Both) throw ContractError("fix: domain already fixed to the other value");
  d = target;
}

std::string to_string(BoolDomain d) {
  switch (d) {
    case BoolDomain::Zero:
      return "0";
    case BoolDomain::One:
      return "1";
    case BoolDomain::Both:
      return "{0,1}";
  }
  return "?";
}

IntDomain::IntDomain(std::initializer_list<std::size_t> values)
    : IntDomain(std::vector<std::size_t>(values)) {}

IntDomain::IntDomain(std::vector<std::size_t> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

IntDomain IntDomain::full(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return IntDomain(std::move(v));
}

std::size_t IntDomain::value() const {
  if (!is_singleton()) throw ContractError("IntDomain::value on a non-singleton domain");
  return values_.front();
}

bool IntDomain::contains(std::size_t v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

bool IntDomain::remove(std::size_t v) {
  auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.end() || *it != v) return false;
  values_.erase(it);
  return true;
}

void IntDomain::assign(std::size_t v) {
  if (!contains(v)) throw ContractError("IntDomain::assign: value not in domain");
  values_.assign(1, v);
}

}  // namespace bagel::constraints
