// Benchmark CLI: dataset generation, solver runs with metrics, the penalty
// sensitivity sweep, and the runtime scaling grid.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <vector>

#include "fairsc/bench.hpp"

namespace {

using fairsc::RunConfig;
using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::string dataset;
  int n = -1;
  int k = -1;
  int h = -1;
  double p_within = -1.0;
  double p_between = -1.0;
  double group_prob = -1.0;
  std::string edges, groups, csv, group_column;
  double gamma = 0.0;
  double omega = -1.0;
  std::vector<std::string> solvers;
  double alpha0 = -1.0;
  int admm_iters = -1;
  int repetitions = -1;
  long long seed = -1;
  std::string out;
  bool trace = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "JSON config file; flags override its keys");
  cmd->add_option("--dataset", flags->dataset, "generator: msbm | randlaplace | elliptical");
  cmd->add_option("--n", flags->n, "sample count");
  cmd->add_option("--k", flags->k, "number of clusters");
  cmd->add_option("--h", flags->h, "number of groups");
  cmd->add_option("--p-within", flags->p_within, "m-SBM within-cluster edge probability");
  cmd->add_option("--p-between", flags->p_between, "m-SBM between-cluster edge probability");
  cmd->add_option("--group-prob", flags->group_prob, "RandLaplace Bernoulli group probability");
  cmd->add_option("--edges", flags->edges, "edge-list file (graph input)");
  cmd->add_option("--groups", flags->groups, "group file, one integer per line");
  cmd->add_option("--csv", flags->csv, "feature CSV file (point input)");
  cmd->add_option("--group-column", flags->group_column, "group column name in the CSV");
  cmd->add_option("--gamma", flags->gamma, "RBF bandwidth (default 1/d)");
  cmd->add_option("--omega", flags->omega, "graph spectrum shift (default 0.01)");
  cmd->add_option("--solvers", flags->solvers, "subset of {ofsc, sfsc, admm}");
  cmd->add_option("--alpha0", flags->alpha0, "initial ADMM penalty");
  cmd->add_option("--admm-iters", flags->admm_iters, "ADMM iteration cap T");
  cmd->add_option("--repetitions", flags->repetitions, "repetitions per cell");
  cmd->add_option("--seed", flags->seed, "base seed; repetition r uses seed + r");
  cmd->add_option("--out", flags->out, "output directory");
  cmd->add_flag("--trace", flags->trace, "write per-iteration ADMM trace (JSON lines)");
}

RunConfig build_config(const CommonFlags& flags) {
  json j;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + flags.config_path);
    in >> j;
  }
  json& dataset = j["dataset"];
  if (!flags.dataset.empty()) dataset["generator"] = flags.dataset;
  if (flags.n >= 0) dataset["n"] = flags.n;
  if (flags.k >= 0) {
    dataset["k"] = flags.k;
    j["solver"]["k"] = flags.k;
  }
  if (flags.h >= 0) dataset["h"] = flags.h;
  if (flags.p_within >= 0.0) dataset["p_within"] = flags.p_within;
  if (flags.p_between >= 0.0) dataset["p_between"] = flags.p_between;
  if (flags.group_prob >= 0.0) dataset["group_prob"] = flags.group_prob;
  if (!flags.edges.empty()) dataset["edges"] = flags.edges;
  if (!flags.groups.empty()) dataset["groups"] = flags.groups;
  if (!flags.csv.empty()) dataset["csv"] = flags.csv;
  if (!flags.group_column.empty()) dataset["group_column"] = flags.group_column;
  if (dataset.is_null()) j.erase("dataset");

  if (flags.gamma > 0.0) j["affinity"]["gamma"] = flags.gamma;
  if (flags.omega >= 0.0) j["affinity"]["omega"] = flags.omega;
  if (!flags.solvers.empty()) j["solvers"] = flags.solvers;
  if (flags.alpha0 > 0.0) j["solver"]["alpha0"] = flags.alpha0;
  if (flags.admm_iters > 0) j["solver"]["T"] = flags.admm_iters;
  if (flags.repetitions > 0) j["repetitions"] = flags.repetitions;
  if (flags.seed >= 0) j["seed"] = static_cast<std::uint64_t>(flags.seed);
  if (!flags.out.empty()) j["output_dir"] = flags.out;
  if (flags.trace) j["write_trace"] = true;
  return fairsc::run_config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairsc: fair spectral clustering benchmark harness"};
  app.require_subcommand(1);

  CommonFlags gen_flags, cluster_flags, sweep_flags, scaling_flags;
  std::vector<double> alphas{0.005, 0.01, 0.05, 0.1};
  std::vector<int> n_list, k_list;

  CLI::App* generate = app.add_subcommand("generate", "write a dataset to disk");
  add_common_flags(generate, &gen_flags);

  CLI::App* cluster = app.add_subcommand("cluster", "run solvers and report metrics");
  add_common_flags(cluster, &cluster_flags);

  CLI::App* sweep = app.add_subcommand("sweep-alpha", "penalty sensitivity sweep (ADMM)");
  add_common_flags(sweep, &sweep_flags);
  sweep->add_option("--alphas", alphas, "penalty values to sweep");

  CLI::App* scaling = app.add_subcommand("scaling", "runtime grid over n and k");
  add_common_flags(scaling, &scaling_flags);
  scaling->add_option("--n-list", n_list, "sample sizes")->required();
  scaling->add_option("--k-list", k_list, "cluster counts")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      const json meta = fairsc::cmd_generate(build_config(gen_flags));
      std::cout << meta.dump(2) << '\n';
      return 0;
    }
    if (cluster->parsed()) {
      const int failures = fairsc::cmd_cluster(build_config(cluster_flags));
      if (failures > 0) std::cerr << failures << " cell(s) failed\n";
      return failures == 0 ? 0 : 1;
    }
    if (sweep->parsed()) {
      const int failures = fairsc::cmd_sweep_alpha(build_config(sweep_flags), alphas);
      if (failures > 0) std::cerr << failures << " cell(s) failed\n";
      return failures == 0 ? 0 : 1;
    }
    if (scaling->parsed()) {
      const int failures = fairsc::cmd_scaling(build_config(scaling_flags), n_list, k_list);
      if (failures > 0) std::cerr << failures << " cell(s) failed\n";
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
