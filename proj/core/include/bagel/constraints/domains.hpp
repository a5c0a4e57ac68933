#ifndef BAGEL_CONSTRAINTS_DOMAINS_HPP
#define BAGEL_CONSTRAINTS_DOMAINS_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace bagel::constraints {

/// Domain of a 0/1 decision variable.
enum class BoolDomain { Zero, One, Both };

/// Largest value still allowed (ONE or BOTH -> 1).
inline int upper_bound(BoolDomain d) { return d == BoolDomain::Zero ? 0 : 1; }
inline bool is_fixed(BoolDomain d) { return d != BoolDomain::Both; }

/// Fixes an unfixed domain. Throws ContractError when it would widen or flip a
/// fixed domain.
void fix(BoolDomain& d, int value);

std::string to_string(BoolDomain d);

/// Finite domain of candidate indices, kept sorted and duplicate free.
class IntDomain {
 public:
  IntDomain() = default;
  IntDomain(std::initializer_list<std::size_t> values);
  explicit IntDomain(std::vector<std::size_t> values);

  /// {0, 1, ..., n - 1}
  static IntDomain full(std::size_t n);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool is_singleton() const { return values_.size() == 1; }
  std::size_t value() const;  // requires singleton
  bool contains(std::size_t v) const;

  /// Removes v; returns whether it was present.
  bool remove(std::size_t v);
  /// Restricts the domain to {v}. v must be present.
  void assign(std::size_t v);

  const std::vector<std::size_t>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const IntDomain&, const IntDomain&) = default;

 private:
  std::vector<std::size_t> values_;
};

}  // namespace bagel::constraints

#endif  // BAGEL_CONSTRAINTS_DOMAINS_HPP
