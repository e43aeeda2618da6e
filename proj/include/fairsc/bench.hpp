#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairsc/clustering.hpp"
#include "fairsc/datasets.hpp"
#include "fairsc/solvers.hpp"

namespace fairsc {

/// Fully resolved benchmark configuration. Every output file embeds its JSON
/// form, so a result is reproducible from the file alone.
struct RunConfig {
  nlohmann::json dataset;  // generator spec or file paths
  double gamma = -1.0;     // RBF bandwidth; <= 0 means 1/d
  double omega = 0.01;     // graph spectrum shift
  std::vector<std::string> solvers = {"ofsc", "sfsc", "admm"};
  SolverConfig solver;
  KmeansConfig kmeans;
  int repetitions = 5;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  bool write_trace = false;
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json resolved_config_json(const RunConfig& cfg);

/// Builds the dataset named by cfg.dataset; generators draw from `seed`.
DatasetBundle make_dataset(const RunConfig& cfg, std::uint64_t seed);

/// Affinity for a bundle under cfg (RBF for points, shifted normalized
/// adjacency for graphs).
AffinityModel make_affinity(const RunConfig& cfg, const DatasetBundle& bundle);

/// One solver-by-repetition cell of a benchmark run.
struct CellResult {
  std::string solver;
  int repetition = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string status = "ok";
  double wall_time_s = 0.0;
  double average_balance = 0.0;
  double min_balance = 0.0;
  double clustering_cost = 0.0;
  double objective = 0.0;  // Tr(H^T M H), continuous embedding
  double fairness_residual = 0.0;
  double orthogonality_residual = 0.0;
  int admm_iterations = 0;
  std::vector<IterationRecord> trace;
};

/// Runs one solver on a prepared instance and clusters the embedding rows.
CellResult run_cell(const std::string& solver, const AffinityModel& model,
                    const FairnessConstraint& fc, const std::vector<int>& group_labels,
                    const RunConfig& cfg, std::uint64_t seed, int repetition);

/// generate: write dataset files plus a metadata JSON into output_dir.
/// Returns the metadata.
nlohmann::json cmd_generate(const RunConfig& cfg);

/// cluster: per-solver, per-repetition metric rows plus mean/std summary
/// rows; returns the number of failed cells.
int cmd_cluster(const RunConfig& cfg);

/// sweep-alpha: one ADMM summary row per penalty value, Table-style columns.
int cmd_sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas);

/// scaling: runtime grid over (solver, n, k) written as CSV.
int cmd_scaling(const RunConfig& cfg, const std::vector<int>& n_list,
                const std::vector<int>& k_list);

}  // namespace fairsc
