#include "fairsc/fairness.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <string>

namespace fairsc {

FairnessConstraint build_constraint(const std::vector<int>& group_labels, const Vector& degree) {
  const Index n = static_cast<Index>(group_labels.size());
  if (n == 0) throw ContractError("build_constraint: empty label vector");
  if (degree.size() != n) throw ContractError("build_constraint: degree/label size mismatch");
  if (degree.minCoeff() <= 0.0) throw ContractError("build_constraint: degrees must be positive");

  const int h = 1 + *std::max_element(group_labels.begin(), group_labels.end());
  if (*std::min_element(group_labels.begin(), group_labels.end()) < 0)
    throw ContractError("build_constraint: negative group label");

  FairnessConstraint fc;
  fc.num_groups = h;
  fc.group_indicator = Matrix::Zero(n, h);
  for (Index i = 0; i < n; ++i) fc.group_indicator(i, group_labels[i]) = 1.0;

  fc.group_fractions = fc.group_indicator.colwise().sum().transpose() / static_cast<double>(n);
  for (int s = 0; s < h; ++s)
    if (fc.group_fractions(s) == 0.0)
      throw ContractError("build_constraint: group " + std::to_string(s) + " has no members");

  fc.f0 = fc.group_indicator - Vector::Ones(n) * fc.group_fractions.transpose();
  // D^{-1/2} F0 with the last column dropped; rank becomes h-1 with same range.
  const Vector inv_sqrt = degree.cwiseSqrt().cwiseInverse();
  fc.f = inv_sqrt.asDiagonal() * fc.f0.leftCols(h - 1);
  fc.dropped_group = h - 1;
  fc.nullspace = nullspace_basis(fc.f);
  return fc;
}

Matrix nullspace_basis(const Matrix& f) {
  const Index n = f.rows();
  if (f.cols() == 0) return Matrix::Identity(n, n);
  if (f.cols() >= n) throw ContractError("nullspace_basis: expected fewer columns than rows");

  Eigen::BDCSVD<Matrix> svd(f, Eigen::ComputeThinU);
  const Vector& sigma = svd.singularValues();
  const double cutoff = 1e-10 * sigma(0);
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  if (rank == 0) return Matrix::Identity(n, n);

  // Complete the range basis to an orthonormal basis of R^n; the trailing
  // columns span the orthogonal complement of range(f) = null(f^T).
  Eigen::HouseholderQR<Matrix> qr(svd.matrixU().leftCols(rank));
  Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  return full.rightCols(n - rank);
}

double fairness_residual(const Matrix& f, const Matrix& h) {
  if (f.cols() == 0) return 0.0;
  if (f.rows() != h.rows()) throw ContractError("fairness_residual: row count mismatch");
  return (f.transpose() * h).squaredNorm();
}

}  // namespace fairsc
