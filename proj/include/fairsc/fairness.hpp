#pragma once

#include <vector>

#include "fairsc/types.hpp"

namespace fairsc {

/// Group-fairness constraint data for one problem instance.
///
/// f0 = G - 1 z^T is the centered group indicator; f = D^{-1/2} f0 with the
/// last group column removed, which keeps the range while making the column
/// rank exactly h - 1. nullspace holds an orthonormal basis Q of null(f^T),
/// shared by the baseline solvers and the ADMM Y-subproblem.
struct FairnessConstraint {
  Matrix group_indicator;  // G, n-by-h binary
  Vector group_fractions;  // z = G^T 1 / n
  Matrix f0;               // n-by-h
  Matrix f;                // n-by-(h-1)
  Matrix nullspace;        // Q, n-by-(n-h+1), Q^T Q = I, f^T Q = 0
  int num_groups = 0;      // h
  int dropped_group = -1;  // column of f0 removed to fix the rank

  Index size() const { return group_indicator.rows(); }
};

/// Builds the constraint from integer group labels in [0, h) and the degree
/// vector. Throws ContractError when a label in the range is unused.
FairnessConstraint build_constraint(const std::vector<int>& group_labels, const Vector& degree);

/// Orthonormal basis of null(F^T) for an n-by-m F with m < n. Rank is decided
/// by a thin SVD with cutoff 1e-10 times the largest singular value; an empty
/// F yields the identity.
Matrix nullspace_basis(const Matrix& f);

/// Squared Frobenius norm of F^T H.
double fairness_residual(const Matrix& f, const Matrix& h);

}  // namespace fairsc
