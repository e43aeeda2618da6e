#include "fairsc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairsc {

namespace {

// Squared distance from every row to its assigned center.
double assign_labels(const Matrix& rows, const Matrix& centers, std::vector<int>* labels) {
  const Index n = rows.rows();
  const int k = static_cast<int>(centers.rows());
  double inertia = 0.0;
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (int c = 0; c < k; ++c) {
      const double d = (rows.row(i) - centers.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    (*labels)[i] = best_c;
    inertia += best;
  }
  return inertia;
}

Matrix plus_plus_seed(const Matrix& rows, int k, Rng& rng) {
  const Index n = rows.rows();
  Matrix centers(k, rows.cols());
  centers.row(0) = rows.row(static_cast<Index>(rng.uniform_below(n)));

  Vector min_sq = (rows.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = min_sq.sum();
    Index pick;
    if (total <= 0.0) {
      pick = static_cast<Index>(rng.uniform_below(n));  // all points coincide with a center
    } else {
      double target = rng.uniform() * total;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        target -= min_sq(i);
        if (target <= 0.0) {
          pick = i;
          break;
        }
      }
    }
    centers.row(c) = rows.row(pick);
    min_sq = min_sq.cwiseMin((rows.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace

KmeansResult kmeans_single_run(const Matrix& rows, const KmeansConfig& cfg, std::uint64_t seed,
                               std::vector<double>* history) {
  const Index n = rows.rows();
  const int k = cfg.k;
  Rng rng(seed);
  Matrix centers = plus_plus_seed(rows, k, rng);

  KmeansResult result;
  result.labels.assign(n, 0);
  double inertia = assign_labels(rows, centers, &result.labels);
  if (history != nullptr) history->push_back(inertia);

  std::vector<int> counts(k, 0);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // update step
    centers.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (Index i = 0; i < n; ++i) {
      centers.row(result.labels[i]) += rows.row(i);
      ++counts[result.labels[i]];
    }
    std::vector<int> empty;
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0)
        centers.row(c) /= counts[c];
      else
        empty.push_back(c);
    }
    for (int c : empty) {
      // re-seed at the point farthest from its own center, taken from a
      // cluster that can spare one (n >= k guarantees a donor exists)
      Index farthest = 0;
      double best = -1.0;
      for (Index i = 0; i < n; ++i) {
        if (counts[result.labels[i]] <= 1) continue;
        const double d = (rows.row(i) - centers.row(result.labels[i])).squaredNorm();
        if (d > best) {
          best = d;
          farthest = i;
        }
      }
      centers.row(c) = rows.row(farthest);
      --counts[result.labels[farthest]];
      result.labels[farthest] = c;
      ++counts[c];
    }

    const double next = assign_labels(rows, centers, &result.labels);
    if (history != nullptr) history->push_back(next);
    const double denom = std::max(inertia, 1e-300);
    const bool converged = (inertia - next) / denom <= cfg.tol;
    inertia = next;
    if (converged) break;
  }
  result.inertia = inertia;
  return result;
}

KmeansResult kmeans(const Matrix& rows, const KmeansConfig& cfg) {
  if (cfg.k < 1) throw ContractError("kmeans: k must be positive");
  if (rows.rows() < cfg.k) throw ContractError("kmeans: need at least k rows");
  if (cfg.restarts < 1) throw ContractError("kmeans: restarts must be positive");

  KmeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    KmeansResult run = kmeans_single_run(rows, cfg, cfg.seed + static_cast<std::uint64_t>(r));
    if (run.inertia < best.inertia) {
      best = std::move(run);
      best.best_restart = r;
    }
  }
  return best;
}

Matrix indicator_embedding(const std::vector<int>& labels, int k) {
  const Index n = static_cast<Index>(labels.size());
  if (k < 1) throw ContractError("indicator_embedding: k must be positive");
  std::vector<int> counts(k, 0);
  for (int label : labels) {
    if (label < 0 || label >= k) throw ContractError("indicator_embedding: label out of range");
    ++counts[label];
  }
  Matrix indicator = Matrix::Zero(n, k);
  for (Index i = 0; i < n; ++i) {
    const int label = labels[i];
    indicator(i, label) = 1.0 / std::sqrt(static_cast<double>(counts[label]));
  }
  return indicator;
}

}  // namespace fairsc
