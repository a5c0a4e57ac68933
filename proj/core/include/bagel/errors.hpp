#ifndef BAGEL_ERRORS_HPP
#define BAGEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bagel {

// Shapes of two operands disagree.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A value lies outside the domain an operation accepts (negative NMF input, NaN, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Enumeration or table construction would exceed a hard size guard.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// Generator or run parameters are rejected.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A caller broke an operation's precondition (internal invariant).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace bagel

#endif  // BAGEL_ERRORS_HPP
