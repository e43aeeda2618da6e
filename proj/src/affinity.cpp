#include "fairsc/affinity.hpp"

#include <cmath>
#include <string>

namespace fairsc {

AffinityModel::AffinityModel(Matrix normalized, Vector degree, double omega, bool duplicate_points)
    : m_(std::move(normalized)), degree_(std::move(degree)), omega_(omega),
      duplicate_points_(duplicate_points) {}

Matrix AffinityModel::apply(const Matrix& x) const {
  if (x.rows() != m_.rows()) throw ContractError("AffinityModel::apply: row count mismatch");
  if (x.cols() > m_.rows()) throw ContractError("AffinityModel::apply: too many columns");
  return m_ * x;
}

Matrix AffinityModel::scale_rows_inv_sqrt_degree(const Matrix& h) const {
  if (h.rows() != degree_.size())
    throw ContractError("AffinityModel: row count mismatch in degree scaling");
  return degree_.cwiseSqrt().cwiseInverse().asDiagonal() * h;
}

AffinityModel rbf_affinity(const Matrix& points, double gamma) {
  if (gamma <= 0.0) throw ContractError("rbf_affinity: gamma must be positive");
  if (points.rows() < 1) throw ContractError("rbf_affinity: empty point set");
  if (!points.allFinite()) throw ContractError("rbf_affinity: non-finite point coordinates");

  const Index n = points.rows();
  const Vector sq_norms = points.rowwise().squaredNorm();
  Matrix sq_dist = sq_norms.replicate(1, n) + sq_norms.transpose().replicate(n, 1);
  sq_dist.noalias() -= 2.0 * points * points.transpose();
  sq_dist = sq_dist.cwiseMax(0.0);
  sq_dist.diagonal().setZero();

  bool duplicates = false;
  for (Index i = 0; i < n && !duplicates; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (sq_dist(i, j) <= 1e-24) {
        duplicates = true;
        break;
      }

  Matrix kernel = (-gamma * sq_dist).array().exp();
  Vector degree = kernel.rowwise().sum();  // >= 1 since K_ii = 1
  const Vector inv_sqrt = degree.cwiseSqrt().cwiseInverse();
  Matrix normalized = inv_sqrt.asDiagonal() * kernel * inv_sqrt.asDiagonal();
  return AffinityModel(std::move(normalized), std::move(degree), 0.0, duplicates);
}

AffinityModel graph_affinity(const Matrix& adjacency, double omega) {
  if (adjacency.rows() != adjacency.cols())
    throw ContractError("graph_affinity: adjacency must be square");
  if (!(omega > 0.0)) throw ContractError("graph_affinity: omega must be positive");
  const double scale = std::max(adjacency.norm(), 1.0);
  if ((adjacency - adjacency.transpose()).norm() > 1e-10 * scale)
    throw ContractError("graph_affinity: adjacency must be symmetric");
  if (adjacency.minCoeff() < 0.0)
    throw ContractError("graph_affinity: adjacency must be nonnegative");

  Vector degree = adjacency.rowwise().sum();
  for (Index i = 0; i < degree.size(); ++i)
    if (!(degree(i) > 0.0))
      throw ContractError("graph_affinity: node " + std::to_string(i) + " has zero degree");

  const Vector inv_sqrt = degree.cwiseSqrt().cwiseInverse();
  Matrix normalized = inv_sqrt.asDiagonal() * adjacency * inv_sqrt.asDiagonal();
  normalized.diagonal().array() += 1.0 + omega;
  return AffinityModel(std::move(normalized), std::move(degree), omega, false);
}

double trace_quadratic(const AffinityModel& model, const Matrix& x) {
  return x.cwiseProduct(model.apply(x)).sum();
}

}  // namespace fairsc
