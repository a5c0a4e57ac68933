#ifndef BAGEL_NUMERICS_NORMS_HPP
#define BAGEL_NUMERICS_NORMS_HPP

#include <cstddef>
#include <limits>

#include "bagel/numerics/matrix.hpp"

namespace bagel::numerics {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Number of entries with |v_i| > eps.
std::size_t norm_l0(const Vector& v, double eps = 0.0);

/// ||y o (1 - t)||_0: entries of y that are nonzero where the binary tuple t
/// is zero. t must contain only 0/1 values.
std::size_t masked_l0_cost(const Vector& y, const Vector& t, double eps = 0.0);

/// ||y o (1 - t)||_p for a binary t. p = 0 counts, p = kInfinity takes the max.
double masked_lp_cost(const Vector& y, const Vector& t, double p, double eps = 0.0);

/// ||y - t||_p. p = 0 counts differing coordinates, p = kInfinity is the max norm.
double lp_distance(const Vector& y, const Vector& t, double p);

}  // namespace bagel::numerics

#endif  // BAGEL_NUMERICS_NORMS_HPP
