#pragma once

#include <cstdint>
#include <vector>

#include "fairsc/types.hpp"

namespace fairsc {

struct KmeansConfig {
  int k = 2;
  int max_iters = 300;
  int restarts = 10;
  double tol = 1e-8;  // relative inertia change per Lloyd iteration
  std::uint64_t seed = 0;
};

struct KmeansResult {
  std::vector<int> labels;
  double inertia = 0.0;
  int best_restart = 0;
};

/// k-means++ seeding followed by Lloyd iterations; best of cfg.restarts runs
/// by inertia. Empty clusters are re-seeded from the farthest point. Throws
/// ContractError when n < k.
KmeansResult kmeans(const Matrix& rows, const KmeansConfig& cfg);

/// Single seeded run, exposed for the monotonicity tests. Appends the inertia
/// after every Lloyd iteration to `history` when given.
KmeansResult kmeans_single_run(const Matrix& rows, const KmeansConfig& cfg, std::uint64_t seed,
                               std::vector<double>* history = nullptr);

/// Normalized 0-1 indicator: column l is the indicator of cluster l scaled by
/// 1/sqrt(|C_l|), so the columns over nonempty clusters are orthonormal.
/// Empty clusters produce zero columns.
Matrix indicator_embedding(const std::vector<int>& labels, int k);

}  // namespace fairsc
