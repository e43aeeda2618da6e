#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairsc/types.hpp"

namespace fairsc {

enum class DatasetKind { kPoints, kGraph };

/// A clustering problem instance: either a point cloud or a weighted graph,
/// plus per-sample group labels. Immutable after creation.
struct DatasetBundle {
  DatasetKind kind = DatasetKind::kPoints;
  Matrix points;     // n-by-d, points kind only
  Matrix adjacency;  // n-by-n symmetric, zero diagonal, graph kind only
  std::vector<int> group_labels;
  std::vector<int> ground_truth_clusters;  // empty when unknown
  int num_groups = 0;
  std::string name;
  std::string provenance;  // JSON text: generator parameters, seed, encodings

  Index size() const { return static_cast<Index>(group_labels.size()); }
};

/// Checks the bundle invariants; throws ContractError on violation.
void validate(const DatasetBundle& bundle);

/// Paper default edge probability (log n / n)^(1/10), natural log.
double msbm_default_edge_probability(int n);

/// Fair stochastic block model: k equal-size ground-truth clusters, h groups
/// distributed in identical proportions inside every cluster, edges sampled
/// with p_within inside clusters and p_between across. n is truncated to a
/// multiple of k.
DatasetBundle gen_msbm(Rng& rng, int n, int k, int h, double p_within, double p_between);

/// Random symmetric adjacency with Uniform(0,1) off-diagonal weights.
/// h == 2 draws binary group labels Bernoulli(group_prob); h > 2 draws
/// uniformly among the h groups.
DatasetBundle gen_randlaplace(Rng& rng, int n, int h, double group_prob = 0.3);

/// Two anisotropic 2-D Gaussian clouds (k = 2, h = 2), groups split evenly
/// inside each cloud. n must be even.
DatasetBundle gen_elliptical(Rng& rng, int n);

/// Edge-list loader: lines "u v [w]" (whitespace or commas), 0-based ids,
/// duplicate edges merged by max weight, self-loops ignored. The group file
/// has one integer per line and fixes n. Errors carry line numbers.
DatasetBundle load_edge_list(const std::string& edge_path, const std::string& group_path);

/// CSV loader: header row, numeric feature columns, one categorical group
/// column encoded by first appearance. Errors carry row/column positions.
DatasetBundle load_feature_csv(const std::string& path, const std::string& group_column);

/// Writers used by the generate command; load_* round-trips them bit-exactly.
void write_edge_list(const DatasetBundle& bundle, const std::string& edge_path,
                     const std::string& group_path);
void write_feature_csv(const DatasetBundle& bundle, const std::string& path);

/// Shortest round-trip decimal form of a double (shared by all file writers).
std::string format_double(double value);

}  // namespace fairsc
