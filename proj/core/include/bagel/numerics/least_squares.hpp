#ifndef BAGEL_NUMERICS_LEAST_SQUARES_HPP
#define BAGEL_NUMERICS_LEAST_SQUARES_HPP

#include "bagel/numerics/matrix.hpp"

namespace bagel::numerics {

struct LeastSquaresFit {
  Vector theta;  // length d, exactly zero where the mask is zero
  double loss;   // ||X theta - y||_2 (unsquared)
};

/// Minimises ||X (theta o mask) - y||_2.
///
/// Only the columns with mask_j = 1 enter the factorisation. The solve uses a
/// complete orthogonal decomposition (column-pivoted QR followed by an RQ step),
/// so rank-deficient designs yield the minimum-norm solution instead of failing.
/// Masked-out coordinates of theta are exactly 0.
LeastSquaresFit solve_least_squares(const Matrix& x, const Vector& y, const Vector& mask);

}  // namespace bagel::numerics

#endif  // BAGEL_NUMERICS_LEAST_SQUARES_HPP
