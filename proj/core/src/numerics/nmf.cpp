#include "bagel/numerics/nmf.hpp"

#include <Eigen/Dense>
#include <string>

#include "bagel/errors.hpp"

namespace bagel::numerics {
namespace {

using Dense = Eigen::MatrixXd;
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Matrix to_matrix(const Dense& m) {
  RowMajor rm = m;
  return Matrix(static_cast<std::size_t>(rm.rows()), static_cast<std::size_t>(rm.cols()),
                std::vector<double>(rm.data(), rm.data() + rm.size()));
}

Dense to_dense(const Matrix& m) {
  return Eigen::Map<const RowMajor>(m.values().data(), static_cast<Eigen::Index>(m.rows()),
                                    static_cast<Eigen::Index>(m.cols()));
}

}  // namespace

NmfResult nmf_multiplicative(const Matrix& a, std::size_t k, const Matrix& mask, Rng& rng,
                             const NmfOptions& options) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (k == 0) throw DomainError("nmf_multiplicative: k must be at least 1");
  if (mask.rows() != n || mask.cols() != k) {
    throw DimensionError("nmf_multiplicative: mask must be " + std::to_string(n) + "x" +
                         std::to_string(k));
  }
  for (double v : a.values()) {
    if (v < 0.0) throw DomainError("nmf_multiplicative: negative entry in A");
  }
  for (double v : mask.values()) {
    if (v != 0.0 && v != 1.0) throw DomainError("nmf_multiplicative: mask must be binary");
  }

  const Dense target = to_dense(a);
  const Dense keep = to_dense(mask);
  const auto ni = static_cast<Eigen::Index>(n);
  const auto mi = static_cast<Eigen::Index>(m);
  const auto ki = static_cast<Eigen::Index>(k);

  // Fill order is fixed (W row-major, then H row-major) so seeds are portable.
  Dense w(ni, ki);
  for (Eigen::Index r = 0; r < ni; ++r)
    for (Eigen::Index c = 0; c < ki; ++c) w(r, c) = rng.uniform_open_closed();
  Dense h(ki, mi);
  for (Eigen::Index r = 0; r < ki; ++r)
    for (Eigen::Index c = 0; c < mi; ++c) h(r, c) = rng.uniform_open_closed();
  w = w.cwiseProduct(keep);

  std::vector<double> history;
  auto report = [&](std::size_t iteration) {
    const double loss = (target - w * h).norm();
    if (options.record_history) history.push_back(loss);
    if (options.observer) options.observer(iteration, to_matrix(w), to_matrix(h), loss);
    return loss;
  };

  double loss = report(0);
  for (std::size_t it = 1; it <= options.iters; ++it) {
    const Dense wt_a = w.transpose() * target;
    const Dense wt_w_h = (w.transpose() * w) * h;
    h = h.cwiseProduct(wt_a).cwiseQuotient((wt_w_h.array() + kNmfDenominatorEps).matrix());

    const Dense a_ht = target * h.transpose();
    const Dense w_h_ht = w * (h * h.transpose());
    w = w.cwiseProduct(a_ht).cwiseQuotient((w_h_ht.array() + kNmfDenominatorEps).matrix());
    w = w.cwiseProduct(keep);

    if (options.record_history || options.observer || it == options.iters) {
      loss = report(it);
    }
  }

  return {to_matrix(w), to_matrix(h), loss, std::move(history)};
}

}  // namespace bagel::numerics
