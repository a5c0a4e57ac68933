#ifndef BAGEL_NUMERICS_NMF_HPP
#define BAGEL_NUMERICS_NMF_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "bagel/numerics/matrix.hpp"
#include "bagel/numerics/rng.hpp"

namespace bagel::numerics {

inline constexpr double kNmfDenominatorEps = 1e-12;

struct NmfResult {
  Matrix w;     // n x k, already multiplied by the mask
  Matrix h;     // k x m
  double loss;  // ||A - W H||_F
  std::vector<double> history;  // loss after init and after every update (when recorded)
};

/// Called after initialisation (iteration 0) and after every update.
using NmfObserver =
    std::function<void(std::size_t iteration, const Matrix& w, const Matrix& h, double loss)>;

struct NmfOptions {
  std::size_t iters = 1000;
  bool record_history = false;
  NmfObserver observer;
};

/// Masked non-negative matrix factorisation A ~ (W o mask) H.
///
/// W and H start uniform in (0, 1] (W first, row-major, then H) and W is
/// multiplied by the mask before the first update. Each iteration applies the
/// Lee-Seung Frobenius updates
///   H <- H o (W^T A) / (W^T W H + eps)
///   W <- W o (A H^T) / (W H H^T + eps),  then W <- W o mask
/// with eps = 1e-12. Masked entries of W therefore stay exactly zero.
NmfResult nmf_multiplicative(const Matrix& a, std::size_t k, const Matrix& mask, Rng& rng,
                             const NmfOptions& options = {});

}  // namespace bagel::numerics

#endif  // BAGEL_NUMERICS_NMF_HPP
