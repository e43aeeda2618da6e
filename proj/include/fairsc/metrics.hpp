#pragma once

#include <vector>

#include "fairsc/affinity.hpp"
#include "fairsc/fairness.hpp"
#include "fairsc/types.hpp"

namespace fairsc {

/// Fairness and quality summary for one clustering run.
struct MetricBundle {
  std::vector<double> balance_per_cluster;
  double average_balance = 0.0;
  double min_balance = 0.0;
  double clustering_cost = 0.0;        // Tr(Hhat^T M Hhat), normalized 0-1 indicator
  double fairness_residual = 0.0;      // ||F^T H||_F^2
  double orthogonality_residual = 0.0; // ||H^T H - I||_F^2
  double wall_time_s = 0.0;
  bool empty_cluster = false;
};

/// Balance of one cluster: the minimum over ordered group pairs of the
/// occupancy ratio. 0 when some group is absent (or the cluster is empty),
/// 1 by convention when h == 1.
double balance(const std::vector<int>& labels, const std::vector<int>& group_labels, int cluster,
               int h);

double average_balance(const std::vector<int>& labels, const std::vector<int>& group_labels,
                       int k, int h);

double min_balance(const std::vector<int>& labels, const std::vector<int>& group_labels, int k,
                   int h);

/// Tr(X^T M X); callers pass the normalized 0-1 indicator for the reported
/// clustering cost or a continuous embedding for solver comparisons.
double clustering_cost(const Matrix& x, const AffinityModel& model);

double orthogonality_residual(const Matrix& h);

/// Assembles the full bundle for a solver's embedding and hard labels.
MetricBundle compute_metrics(const Matrix& embedding, const std::vector<int>& labels, int k,
                             const std::vector<int>& group_labels, int h,
                             const AffinityModel& model, const FairnessConstraint& fc);

}  // namespace fairsc
