#include "bagel/numerics/least_squares.hpp"

#include <Eigen/Dense>
#include <vector>

#include "bagel/errors.hpp"

namespace bagel::numerics {

LeastSquaresFit solve_least_squares(const Matrix& x, const Vector& y, const Vector& mask) {
  const std::size_t m = x.rows();
  const std::size_t d = x.cols();
  if (m == 0) throw DimensionError("solve_least_squares: design has no rows");
  if (y.size() != m) throw DimensionError("solve_least_squares: target length != rows");
  if (mask.size() != d) throw DimensionError("solve_least_squares: mask length != cols");

  std::vector<Eigen::Index> active;
  for (std::size_t j = 0; j < d; ++j) {
    if (mask[j] == 1.0) {
      active.push_back(static_cast<Eigen::Index>(j));
    } else if (mask[j] != 0.0) {
      throw DomainError("solve_least_squares: mask must be binary");
    }
  }

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> design(x.values().data(), static_cast<Eigen::Index>(m),
                                    static_cast<Eigen::Index>(d));
  Eigen::Map<const Eigen::VectorXd> target(y.values().data(), static_cast<Eigen::Index>(m));

  Vector theta(d);
  if (!active.empty()) {
    Eigen::MatrixXd sub = design(Eigen::all, active);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
    Eigen::VectorXd coef = cod.solve(target);
    for (std::size_t i = 0; i < active.size(); ++i) {
      theta[static_cast<std::size_t>(active[i])] = coef(static_cast<Eigen::Index>(i));
    }
  }

  Eigen::Map<const Eigen::VectorXd> t(theta.values().data(), static_cast<Eigen::Index>(d));
  const double loss = (design * t - target).norm();
  return {std::move(theta), loss};
}

}  // namespace bagel::numerics
