#include "bagel/constraints/alldifferent.hpp"

#include <algorithm>
#include <map>

namespace bagel::constraints {

AllDifferentResult alldifferent_filter(std::span<IntDomain> domains) {
  AllDifferentResult result;
  std::map<std::size_t, std::vector<std::size_t>> removed;
  std::vector<bool> propagated(domains.size(), false);

  auto finish = [&] {
    for (auto& [var, values] : removed) {
      std::sort(values.begin(), values.end());
      result.pruned.push_back({var, std::move(values)});
    }
    return result;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < domains.size(); ++i) {
      if (domains[i].empty()) {
        result.failed = true;
        return finish();
      }
      if (!domains[i].is_singleton() || propagated[i]) continue;
      propagated[i] = true;
      const std::size_t v = domains[i].value();
      for (std::size_t j = 0; j < domains.size(); ++j) {
        if (j == i) continue;
        if (domains[j].is_singleton() && domains[j].value() == v) {
          result.failed = true;
          return finish();
        }
        if (domains[j].remove(v)) {
          removed[j].push_back(v);
          changed = true;
          if (domains[j].empty()) {
            result.failed = true;
            return finish();
          }
        }
      }
    }
  }
  return finish();
}

}  // namespace bagel::constraints
