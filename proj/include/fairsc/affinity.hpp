#pragma once

#include "fairsc/types.hpp"

namespace fairsc {

/// Normalized affinity operator M together with the degree vector D.
///
/// Kernel case: M = D^{-1/2} K D^{-1/2} with D_ii = sum_j K_ij (omega = 0).
/// Graph case:  M = D^{-1/2} W D^{-1/2} + (1 + omega) I, which shifts the
/// spectrum into [omega, 2 + omega] without changing eigenvectors.
///
/// Immutable after construction; apply() is reentrant.
class AffinityModel {
 public:
  AffinityModel(Matrix normalized, Vector degree, double omega, bool duplicate_points);

  Index size() const { return degree_.size(); }
  const Vector& degree() const { return degree_; }
  double omega() const { return omega_; }
  bool duplicate_points() const { return duplicate_points_; }

  /// M * X for an n-by-k block X.
  Matrix apply(const Matrix& x) const;

  /// Dense M, materialized for the baseline solvers.
  const Matrix& dense() const { return m_; }

  /// Rows used by k-means: D^{-1/2} * H.
  Matrix scale_rows_inv_sqrt_degree(const Matrix& h) const;

 private:
  Matrix m_;
  Vector degree_;
  double omega_;
  bool duplicate_points_;
};

/// Gaussian-kernel affinity K_ij = exp(-gamma * ||x_i - x_j||^2) over point
/// rows. Duplicate rows are flagged on the model, not rejected.
AffinityModel rbf_affinity(const Matrix& points, double gamma);

/// Normalized graph affinity with the positive shift (1 + omega) I.
/// Throws ContractError on an asymmetric/negative adjacency or a zero-degree
/// node (the error names the node).
AffinityModel graph_affinity(const Matrix& adjacency, double omega = 0.01);

/// Tr(X^T M X) via one operator application.
double trace_quadratic(const AffinityModel& model, const Matrix& x);

}  // namespace fairsc
