#pragma once

#include <functional>

#include "fairsc/types.hpp"

namespace fairsc {

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending,
/// eigenvectors in the matching column order.
struct EigResult {
  Vector values;
  Matrix vectors;
};

/// Thin SVD A = left * diag(singular_values) * right^T with A n-by-k, n >= k.
/// left is n-by-k, right is k-by-k, singular values descending.
struct SvdResult {
  Matrix left;
  Vector singular_values;
  Matrix right;
};

enum class LbfgsStatus {
  kGradientTolerance,
  kObjectiveTolerance,
  kMaxIterations,
  kLineSearchFailure,
};

struct LbfgsConfig {
  int memory = 10;
  double gtol = 1e-3;  // max-abs gradient entry
  double ftol = 1e-4;  // relative objective decrease
  int max_iters = 500;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
};

struct LbfgsResult {
  Matrix x;
  double f = 0.0;
  int iterations = 0;
  LbfgsStatus status = LbfgsStatus::kMaxIterations;
};

/// Objective callback: fills `grad` (same shape as x) and returns f(x).
using ObjectiveFn = std::function<double(const Matrix& x, Matrix& grad)>;

/// Dense symmetric eigendecomposition. Throws ContractError if A is not
/// square or not symmetric within 1e-8 * ||A||_F.
EigResult sym_eig(const Matrix& a);

/// Thin SVD of an n-by-k matrix with n >= k. Throws ContractError on
/// non-finite input or n < k.
SvdResult thin_svd(const Matrix& a);

/// U diag(max(lambda_i, floor))^{-1/2} U^T from the eigendecomposition of a
/// symmetric S. The floor regularizes singular or slightly indefinite inputs
/// instead of erroring.
Matrix spd_inv_sqrt(const Matrix& s, double floor_value);

/// Limited-memory BFGS with a strong-Wolfe line search. Terminates on the
/// gradient tolerance, the relative objective-decrease tolerance, or the
/// iteration cap. A failed line search returns the best iterate seen with
/// status kLineSearchFailure; it never throws.
LbfgsResult lbfgs_minimize(const ObjectiveFn& fn, const Matrix& x0, const LbfgsConfig& cfg);

/// rows-by-cols matrix of i.i.d. standard normal entries drawn from rng.
Matrix gaussian_matrix(Rng& rng, Index rows, Index cols);

}  // namespace fairsc
