#include "fairsc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "fairsc/metrics.hpp"

namespace fairsc {

using nlohmann::json;

namespace {

LbfgsConfig lbfgs_from_json(const json& j) {
  LbfgsConfig cfg;
  cfg.memory = j.value("memory", cfg.memory);
  cfg.gtol = j.value("gtol", cfg.gtol);
  cfg.ftol = j.value("ftol", cfg.ftol);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.wolfe_c1 = j.value("wolfe_c1", cfg.wolfe_c1);
  cfg.wolfe_c2 = j.value("wolfe_c2", cfg.wolfe_c2);
  return cfg;
}

std::string sanitize(std::string text) {
  for (char& ch : text)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return text;
}

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;
};

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate out;
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(ss / static_cast<double>(values.size()));
  return out;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path.string());
  return out;
}

json trace_record_json(const IterationRecord& rec) {
  return json{{"iteration", rec.iteration},
              {"objective", rec.objective},
              {"residual_primal", rec.residual_primal},
              {"residual_dual", rec.residual_dual},
              {"alpha", rec.alpha},
              {"dual_iterations", rec.dual_iterations},
              {"dual_status", rec.dual_status}};
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  if (j.contains("dataset")) cfg.dataset = j.at("dataset");
  if (j.contains("affinity")) {
    cfg.gamma = j["affinity"].value("gamma", cfg.gamma);
    cfg.omega = j["affinity"].value("omega", cfg.omega);
  }
  if (j.contains("solvers")) cfg.solvers = j.at("solvers").get<std::vector<std::string>>();
  if (j.contains("solver")) {
    const json& s = j["solver"];
    cfg.solver.k = s.value("k", cfg.solver.k);
    cfg.solver.alpha0 = s.value("alpha0", cfg.solver.alpha0);
    cfg.solver.max_admm_iters = s.value("T", cfg.solver.max_admm_iters);
    cfg.solver.tau = s.value("tau", cfg.solver.tau);
    cfg.solver.mu = s.value("mu", cfg.solver.mu);
    cfg.solver.eig_floor = s.value("eig_floor", cfg.solver.eig_floor);
    cfg.solver.residual_stop = s.value("residual_stop", cfg.solver.residual_stop);
    cfg.solver.use_lanczos = s.value("use_lanczos", cfg.solver.use_lanczos);
    if (s.contains("lbfgs")) cfg.solver.lbfgs = lbfgs_from_json(s["lbfgs"]);
  }
  if (j.contains("kmeans")) {
    const json& m = j["kmeans"];
    cfg.kmeans.max_iters = m.value("max_iters", cfg.kmeans.max_iters);
    cfg.kmeans.restarts = m.value("restarts", cfg.kmeans.restarts);
    cfg.kmeans.tol = m.value("tol", cfg.kmeans.tol);
  }
  cfg.repetitions = j.value("repetitions", cfg.repetitions);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.write_trace = j.value("write_trace", cfg.write_trace);
  if (cfg.repetitions < 1) throw ContractError("config: repetitions must be >= 1");
  if (cfg.solvers.empty()) throw ContractError("config: select at least one solver");
  for (const auto& name : cfg.solvers)
    if (name != "ofsc" && name != "sfsc" && name != "admm")
      throw ContractError("config: unknown solver '" + name + "'");
  return cfg;
}

json resolved_config_json(const RunConfig& cfg) {
  return json{
      {"dataset", cfg.dataset},
      {"affinity", {{"gamma", cfg.gamma}, {"omega", cfg.omega}}},
      {"solvers", cfg.solvers},
      {"solver",
       {{"k", cfg.solver.k},
        {"alpha0", cfg.solver.alpha0},
        {"T", cfg.solver.max_admm_iters},
        {"tau", cfg.solver.tau},
        {"mu", cfg.solver.mu},
        {"eig_floor", cfg.solver.eig_floor},
        {"residual_stop", cfg.solver.residual_stop},
        {"use_lanczos", cfg.solver.use_lanczos},
        {"lbfgs",
         {{"memory", cfg.solver.lbfgs.memory},
          {"gtol", cfg.solver.lbfgs.gtol},
          {"ftol", cfg.solver.lbfgs.ftol},
          {"max_iters", cfg.solver.lbfgs.max_iters},
          {"wolfe_c1", cfg.solver.lbfgs.wolfe_c1},
          {"wolfe_c2", cfg.solver.lbfgs.wolfe_c2}}}}},
      {"kmeans",
       {{"max_iters", cfg.kmeans.max_iters},
        {"restarts", cfg.kmeans.restarts},
        {"tol", cfg.kmeans.tol}}},
      {"repetitions", cfg.repetitions},
      {"seed", cfg.seed},
      {"output_dir", cfg.output_dir},
      {"write_trace", cfg.write_trace}};
}

DatasetBundle make_dataset(const RunConfig& cfg, std::uint64_t seed) {
  const json& spec = cfg.dataset;
  if (spec.contains("edges"))
    return load_edge_list(spec.at("edges").get<std::string>(),
                          spec.at("groups").get<std::string>());
  if (spec.contains("csv"))
    return load_feature_csv(spec.at("csv").get<std::string>(),
                            spec.value("group_column", std::string("group")));
  if (!spec.contains("generator"))
    throw ContractError("config: dataset needs a 'generator' or file paths");

  const std::string generator = spec.at("generator").get<std::string>();
  Rng rng(seed);
  if (generator == "msbm") {
    const int n = spec.at("n").get<int>();
    const double p_within = spec.value("p_within", msbm_default_edge_probability(n));
    const double p_between = spec.value("p_between", p_within / 2.0);
    return gen_msbm(rng, n, spec.at("k").get<int>(), spec.at("h").get<int>(), p_within,
                    p_between);
  }
  if (generator == "randlaplace")
    return gen_randlaplace(rng, spec.at("n").get<int>(), spec.value("h", 2),
                           spec.value("group_prob", 0.3));
  if (generator == "elliptical") return gen_elliptical(rng, spec.at("n").get<int>());
  throw ContractError("config: unknown generator '" + generator + "'");
}

AffinityModel make_affinity(const RunConfig& cfg, const DatasetBundle& bundle) {
  if (bundle.kind == DatasetKind::kGraph) return graph_affinity(bundle.adjacency, cfg.omega);
  const double gamma =
      cfg.gamma > 0.0 ? cfg.gamma : 1.0 / static_cast<double>(bundle.points.cols());
  return rbf_affinity(bundle.points, gamma);
}

CellResult run_cell(const std::string& solver, const AffinityModel& model,
                    const FairnessConstraint& fc, const std::vector<int>& group_labels,
                    const RunConfig& cfg, std::uint64_t seed, int repetition) {
  CellResult cell;
  cell.solver = solver;
  cell.repetition = repetition;
  cell.seed = seed;
  try {
    SolverConfig solver_cfg = cfg.solver;
    solver_cfg.seed = seed;
    EmbeddingResult result;
    if (solver == "ofsc") {
      result = solve_ofsc(model, fc, solver_cfg);
    } else if (solver == "sfsc") {
      result = solve_sfsc(model, fc, solver_cfg);
    } else {
      Rng rng(seed);
      result = solve_admm_dc(model, fc, solver_cfg, rng);
    }

    KmeansConfig km = cfg.kmeans;
    km.k = cfg.solver.k;
    km.seed = seed;
    const KmeansResult clusters = kmeans(result.rows_for_kmeans, km);
    const MetricBundle metrics = compute_metrics(result.embedding, clusters.labels, km.k,
                                                 group_labels, fc.num_groups, model, fc);

    cell.wall_time_s = result.wall_time_s;
    cell.average_balance = metrics.average_balance;
    cell.min_balance = metrics.min_balance;
    cell.clustering_cost = metrics.clustering_cost;
    cell.objective = result.objective;
    cell.fairness_residual = metrics.fairness_residual;
    cell.orthogonality_residual = metrics.orthogonality_residual;
    cell.admm_iterations = result.admm_iterations;
    cell.trace = result.trace;
    if (result.flagged) cell.status = sanitize(result.status);
  } catch (const std::exception& err) {
    cell.failed = true;
    cell.status = "error: " + sanitize(err.what());
  }
  return cell;
}

json cmd_generate(const RunConfig& cfg) {
  DatasetBundle bundle = make_dataset(cfg, cfg.seed);
  validate(bundle);
  std::filesystem::create_directories(cfg.output_dir);
  const std::filesystem::path dir(cfg.output_dir);

  json meta = json::parse(bundle.provenance);
  meta["name"] = bundle.name;
  meta["num_groups"] = bundle.num_groups;
  meta["config"] = resolved_config_json(cfg);
  if (bundle.kind == DatasetKind::kGraph) {
    write_edge_list(bundle, (dir / "edges.txt").string(), (dir / "groups.txt").string());
    meta["files"] = {{"edges", "edges.txt"}, {"groups", "groups.txt"}};
  } else {
    write_feature_csv(bundle, (dir / "points.csv").string());
    meta["files"] = {{"csv", "points.csv"}, {"group_column", "group"}};
  }
  std::ofstream meta_out = open_output(cfg.output_dir, "meta.json");
  meta_out << meta.dump(2) << '\n';
  return meta;
}

namespace {

const char* kClusterHeader =
    "row_type,solver,rep,seed,n,k,h,average_balance,min_balance,clustering_cost,objective,"
    "fairness_residual,orthogonality_residual,admm_iterations,status,wall_time_s";

void write_cell_row(std::ofstream& out, const CellResult& cell, Index n, int k, int h) {
  out << "rep," << cell.solver << ',' << cell.repetition << ',' << cell.seed << ',' << n << ','
      << k << ',' << h << ',' << format_double(cell.average_balance) << ','
      << format_double(cell.min_balance) << ',' << format_double(cell.clustering_cost) << ','
      << format_double(cell.objective) << ',' << format_double(cell.fairness_residual) << ','
      << format_double(cell.orthogonality_residual) << ',' << cell.admm_iterations << ','
      << cell.status << ',' << format_double(cell.wall_time_s) << '\n';
}

void write_summary_rows(std::ofstream& out, const std::string& solver,
                        const std::vector<CellResult>& cells, Index n, int k, int h) {
  std::vector<double> bal, minbal, cost, obj, fair, ortho, iters, time;
  for (const CellResult& c : cells) {
    if (c.failed || c.solver != solver) continue;
    bal.push_back(c.average_balance);
    minbal.push_back(c.min_balance);
    cost.push_back(c.clustering_cost);
    obj.push_back(c.objective);
    fair.push_back(c.fairness_residual);
    ortho.push_back(c.orthogonality_residual);
    iters.push_back(c.admm_iterations);
    time.push_back(c.wall_time_s);
  }
  if (bal.empty()) return;
  const auto row = [&](const char* kind, auto pick) {
    out << kind << ',' << solver << ",,," << n << ',' << k << ',' << h << ','
        << format_double(pick(aggregate(bal))) << ',' << format_double(pick(aggregate(minbal)))
        << ',' << format_double(pick(aggregate(cost))) << ','
        << format_double(pick(aggregate(obj))) << ',' << format_double(pick(aggregate(fair)))
        << ',' << format_double(pick(aggregate(ortho))) << ','
        << format_double(pick(aggregate(iters))) << ",," << format_double(pick(aggregate(time)))
        << '\n';
  };
  row("mean", [](const Aggregate& a) { return a.mean; });
  row("std", [](const Aggregate& a) { return a.stddev; });
}

}  // namespace

int cmd_cluster(const RunConfig& cfg) {
  std::ofstream out = open_output(cfg.output_dir, "results.csv");
  out << "# " << resolved_config_json(cfg).dump() << '\n' << kClusterHeader << '\n';
  std::ofstream trace_out;
  if (cfg.write_trace) trace_out = open_output(cfg.output_dir, "traces.jsonl");

  int failures = 0;
  std::vector<CellResult> cells;
  Index n = 0;
  int h = 0;
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep);
    const DatasetBundle bundle = make_dataset(cfg, seed);
    const AffinityModel model = make_affinity(cfg, bundle);
    const FairnessConstraint fc = build_constraint(bundle.group_labels, model.degree());
    n = bundle.size();
    h = bundle.num_groups;
    for (const std::string& solver : cfg.solvers) {
      CellResult cell = run_cell(solver, model, fc, bundle.group_labels, cfg, seed, rep);
      if (cell.failed) ++failures;
      write_cell_row(out, cell, n, cfg.solver.k, h);
      if (cfg.write_trace)
        for (const IterationRecord& rec : cell.trace) {
          json line = trace_record_json(rec);
          line["solver"] = solver;
          line["rep"] = rep;
          trace_out << line.dump() << '\n';
        }
      cells.push_back(std::move(cell));
    }
  }
  for (const std::string& solver : cfg.solvers)
    write_summary_rows(out, solver, cells, n, cfg.solver.k, h);
  return failures;
}

int cmd_sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas) {
  for (double alpha : alphas)
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ContractError("sweep-alpha: every alpha must lie in (0, 1)");

  std::ofstream out = open_output(cfg.output_dir, "sweep_alpha.csv");
  out << "# " << resolved_config_json(cfg).dump() << '\n';
  out << "alpha,iterations_mean,iterations_std,cost_mean,cost_std,balance_mean,balance_std,"
         "min_balance_mean,min_balance_std,fairness_mean,fairness_std,ortho_mean,ortho_std\n";

  int failures = 0;
  for (double alpha : alphas) {
    RunConfig run = cfg;
    run.solver.alpha0 = alpha;
    run.solvers = {"admm"};
    std::vector<double> iters, cost, bal, minbal, fair, ortho;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep);
      const DatasetBundle bundle = make_dataset(run, seed);
      const AffinityModel model = make_affinity(run, bundle);
      const FairnessConstraint fc = build_constraint(bundle.group_labels, model.degree());
      CellResult cell = run_cell("admm", model, fc, bundle.group_labels, run, seed, rep);
      if (cell.failed) {
        ++failures;
        continue;
      }
      iters.push_back(cell.admm_iterations);
      cost.push_back(cell.clustering_cost);
      bal.push_back(cell.average_balance);
      minbal.push_back(cell.min_balance);
      fair.push_back(cell.fairness_residual);
      ortho.push_back(cell.orthogonality_residual);
    }
    const Aggregate ai = aggregate(iters), ac = aggregate(cost), ab = aggregate(bal),
                    am = aggregate(minbal), af = aggregate(fair), ao = aggregate(ortho);
    out << format_double(alpha) << ',' << format_double(ai.mean) << ','
        << format_double(ai.stddev) << ',' << format_double(ac.mean) << ','
        << format_double(ac.stddev) << ',' << format_double(ab.mean) << ','
        << format_double(ab.stddev) << ',' << format_double(am.mean) << ','
        << format_double(am.stddev) << ',' << format_double(af.mean) << ','
        << format_double(af.stddev) << ',' << format_double(ao.mean) << ','
        << format_double(ao.stddev) << '\n';
  }
  return failures;
}

int cmd_scaling(const RunConfig& cfg, const std::vector<int>& n_list,
                const std::vector<int>& k_list) {
  if (n_list.empty() || k_list.empty())
    throw ContractError("scaling: n and k lists must be nonempty");

  std::ofstream out = open_output(cfg.output_dir, "scaling.csv");
  out << "# " << resolved_config_json(cfg).dump() << '\n';
  out << "solver,n,k,reps,median_time_s,mean_time_s,std_time_s,status\n";

  int failures = 0;
  for (int n : n_list) {
    for (int k : k_list) {
      RunConfig run = cfg;
      run.dataset["n"] = n;
      if (run.dataset.contains("k")) run.dataset["k"] = k;
      run.solver.k = k;
      for (const std::string& solver : cfg.solvers) {
        std::vector<double> times;
        std::string status = "ok";
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
          const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep);
          try {
            const DatasetBundle bundle = make_dataset(run, seed);
            const AffinityModel model = make_affinity(run, bundle);
            const FairnessConstraint fc = build_constraint(bundle.group_labels, model.degree());
            CellResult cell = run_cell(solver, model, fc, bundle.group_labels, run, seed, rep);
            if (cell.failed) {
              status = cell.status;
              break;
            }
            times.push_back(cell.wall_time_s);
          } catch (const std::exception& err) {
            status = "error: " + sanitize(err.what());
            break;
          }
        }
        if (times.size() != static_cast<std::size_t>(cfg.repetitions)) ++failures;
        double median = 0.0;
        const Aggregate agg = aggregate(times);
        if (!times.empty()) {
          std::vector<double> sorted = times;
          std::sort(sorted.begin(), sorted.end());
          median = sorted[sorted.size() / 2];
        }
        out << solver << ',' << n << ',' << k << ',' << times.size() << ','
            << format_double(median) << ',' << format_double(agg.mean) << ','
            << format_double(agg.stddev) << ',' << status << '\n';
      }
    }
  }
  return failures;
}

}  // namespace fairsc
