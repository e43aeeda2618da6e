#include "fairsc/metrics.hpp"

#include <algorithm>
#include <limits>

#include "fairsc/clustering.hpp"

namespace fairsc {

namespace {

std::vector<int> group_counts(const std::vector<int>& labels,
                              const std::vector<int>& group_labels, int cluster, int h) {
  std::vector<int> counts(h, 0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == cluster) ++counts[group_labels[i]];
  return counts;
}

double balance_from_counts(const std::vector<int>& counts) {
  if (counts.size() == 1) return 1.0;  // empty pair set
  int total = 0;
  for (int c : counts) total += c;
  if (total == 0) return 0.0;  // empty cluster
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  if (*hi == 0) return 0.0;
  return static_cast<double>(*lo) / static_cast<double>(*hi);
}

}  // namespace

double balance(const std::vector<int>& labels, const std::vector<int>& group_labels, int cluster,
               int h) {
  if (labels.size() != group_labels.size())
    throw ContractError("balance: label vectors differ in length");
  if (h < 1) throw ContractError("balance: h must be positive");
  return balance_from_counts(group_counts(labels, group_labels, cluster, h));
}

double average_balance(const std::vector<int>& labels, const std::vector<int>& group_labels,
                       int k, int h) {
  double total = 0.0;
  for (int c = 0; c < k; ++c) total += balance(labels, group_labels, c, h);
  return total / k;
}

double min_balance(const std::vector<int>& labels, const std::vector<int>& group_labels, int k,
                   int h) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int c = 0; c < k; ++c)
    lowest = std::min(lowest, balance(labels, group_labels, c, h));
  return lowest;
}

double clustering_cost(const Matrix& x, const AffinityModel& model) {
  return trace_quadratic(model, x);
}

double orthogonality_residual(const Matrix& h) {
  const Matrix gram = h.transpose() * h;
  return (gram - Matrix::Identity(h.cols(), h.cols())).squaredNorm();
}

MetricBundle compute_metrics(const Matrix& embedding, const std::vector<int>& labels, int k,
                             const std::vector<int>& group_labels, int h,
                             const AffinityModel& model, const FairnessConstraint& fc) {
  MetricBundle out;
  out.balance_per_cluster.resize(k);
  std::vector<int> sizes(k, 0);
  for (int label : labels) ++sizes[label];
  for (int c = 0; c < k; ++c) {
    out.balance_per_cluster[c] = balance(labels, group_labels, c, h);
    if (sizes[c] == 0) out.empty_cluster = true;
  }
  out.average_balance = average_balance(labels, group_labels, k, h);
  out.min_balance = min_balance(labels, group_labels, k, h);
  out.clustering_cost = clustering_cost(indicator_embedding(labels, k), model);
  out.fairness_residual = fairness_residual(fc.f, embedding);
  out.orthogonality_residual = orthogonality_residual(embedding);
  return out;
}

}  // namespace fairsc
