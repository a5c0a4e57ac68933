#ifndef BAGEL_CONSTRAINTS_ALLDIFFERENT_HPP
#define BAGEL_CONSTRAINTS_ALLDIFFERENT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "bagel/constraints/domains.hpp"

namespace bagel::constraints {

struct Removal {
  std::size_t var;
  std::vector<std::size_t> values;
  friend bool operator==(const Removal&, const Removal&) = default;
};

struct AllDifferentResult {
  std::vector<Removal> pruned;  // one entry per variable that lost values
  bool failed = false;
};

/// Binary decomposition of alldifferent: a singleton {v} removes v from every
/// other domain, repeated to a fixpoint. Fails on an empty domain or two
/// singletons holding the same value. Mutates the domains in place.
AllDifferentResult alldifferent_filter(std::span<IntDomain> domains);

}  // namespace bagel::constraints

#endif  // BAGEL_CONSTRAINTS_ALLDIFFERENT_HPP
