// Python bindings for the main operations: dataset generation, affinity and
// constraint construction, the three solvers, k-means, and the metric suite.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairsc/clustering.hpp"
#include "fairsc/datasets.hpp"
#include "fairsc/metrics.hpp"
#include "fairsc/solvers.hpp"

namespace py = pybind11;
using namespace fairsc;

namespace {

DatasetBundle make_points_bundle(const Matrix& points, const std::vector<int>& groups) {
  DatasetBundle bundle;
  bundle.kind = DatasetKind::kPoints;
  bundle.points = points;
  bundle.group_labels = groups;
  bundle.num_groups =
      groups.empty() ? 0 : 1 + *std::max_element(groups.begin(), groups.end());
  bundle.name = "points";
  validate(bundle);
  return bundle;
}

SolverConfig solver_config(int k, double alpha0, int admm_iters, double residual_stop,
                           std::uint64_t seed, double gtol, double ftol, bool use_lanczos) {
  SolverConfig cfg;
  cfg.k = k;
  cfg.alpha0 = alpha0;
  cfg.max_admm_iters = admm_iters;
  cfg.residual_stop = residual_stop;
  cfg.seed = seed;
  cfg.lbfgs.gtol = gtol;
  cfg.lbfgs.ftol = ftol;
  cfg.use_lanczos = use_lanczos;
  return cfg;
}

py::dict result_dict(const EmbeddingResult& r) {
  py::dict out;
  out["embedding"] = r.embedding;
  out["rows_for_kmeans"] = r.rows_for_kmeans;
  out["solver"] = r.solver_name;
  out["objective"] = r.objective;
  out["wall_time_s"] = r.wall_time_s;
  out["admm_iterations"] = r.admm_iterations;
  out["status"] = r.status;
  if (r.eigenvalues.size() > 0) out["eigenvalues"] = Vector(r.eigenvalues);
  py::list trace;
  for (const IterationRecord& rec : r.trace) {
    py::dict row;
    row["iteration"] = rec.iteration;
    row["objective"] = rec.objective;
    row["residual_primal"] = rec.residual_primal;
    row["residual_dual"] = rec.residual_dual;
    row["alpha"] = rec.alpha;
    row["dual_iterations"] = rec.dual_iterations;
    row["dual_status"] = rec.dual_status;
    trace.append(row);
  }
  out["trace"] = trace;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fair spectral clustering: exact baselines and the ADMM-DC solver";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<DatasetBundle>(m, "DatasetBundle")
      .def_property_readonly("is_graph",
                             [](const DatasetBundle& b) { return b.kind == DatasetKind::kGraph; })
      .def_readonly("points", &DatasetBundle::points)
      .def_readonly("adjacency", &DatasetBundle::adjacency)
      .def_readonly("group_labels", &DatasetBundle::group_labels)
      .def_readonly("ground_truth_clusters", &DatasetBundle::ground_truth_clusters)
      .def_readonly("num_groups", &DatasetBundle::num_groups)
      .def_readonly("name", &DatasetBundle::name)
      .def_readonly("provenance", &DatasetBundle::provenance)
      .def("__len__", [](const DatasetBundle& b) { return b.size(); });

  py::class_<AffinityModel>(m, "AffinityModel")
      .def_property_readonly("n", &AffinityModel::size)
      .def_property_readonly("degree", [](const AffinityModel& a) { return Vector(a.degree()); })
      .def_property_readonly("omega", &AffinityModel::omega)
      .def("apply", &AffinityModel::apply, py::arg("x"))
      .def("dense", [](const AffinityModel& a) { return a.dense(); });

  py::class_<FairnessConstraint>(m, "FairnessConstraint")
      .def_readonly("f0", &FairnessConstraint::f0)
      .def_readonly("f", &FairnessConstraint::f)
      .def_readonly("nullspace", &FairnessConstraint::nullspace)
      .def_readonly("num_groups", &FairnessConstraint::num_groups)
      .def_readonly("dropped_group", &FairnessConstraint::dropped_group);

  m.def("msbm_default_edge_probability", &msbm_default_edge_probability, py::arg("n"));
  m.def(
      "gen_msbm",
      [](int n, int k, int h, double p_within, double p_between, std::uint64_t seed) {
        Rng rng(seed);
        if (p_within <= 0.0) p_within = msbm_default_edge_probability(n);
        if (p_between < 0.0) p_between = p_within / 2.0;
        return gen_msbm(rng, n, k, h, p_within, p_between);
      },
      py::arg("n"), py::arg("k"), py::arg("h"), py::arg("p_within") = -1.0,
      py::arg("p_between") = -1.0, py::arg("seed") = 0);
  m.def(
      "gen_randlaplace",
      [](int n, int h, double group_prob, std::uint64_t seed) {
        Rng rng(seed);
        return gen_randlaplace(rng, n, h, group_prob);
      },
      py::arg("n"), py::arg("h") = 2, py::arg("group_prob") = 0.3, py::arg("seed") = 0);
  m.def(
      "gen_elliptical",
      [](int n, std::uint64_t seed) {
        Rng rng(seed);
        return gen_elliptical(rng, n);
      },
      py::arg("n"), py::arg("seed") = 0);
  m.def("load_edge_list", &load_edge_list, py::arg("edge_path"), py::arg("group_path"));
  m.def("load_feature_csv", &load_feature_csv, py::arg("path"), py::arg("group_column"));
  m.def("points_bundle", &make_points_bundle, py::arg("points"), py::arg("group_labels"));

  m.def("rbf_affinity", &rbf_affinity, py::arg("points"), py::arg("gamma"));
  m.def("graph_affinity", &graph_affinity, py::arg("adjacency"), py::arg("omega") = 0.01);
  m.def(
      "affinity",
      [](const DatasetBundle& b, double gamma, double omega) {
        if (b.kind == DatasetKind::kGraph) return graph_affinity(b.adjacency, omega);
        if (gamma <= 0.0) gamma = 1.0 / static_cast<double>(b.points.cols());
        return rbf_affinity(b.points, gamma);
      },
      py::arg("bundle"), py::arg("gamma") = -1.0, py::arg("omega") = 0.01);

  m.def(
      "build_constraint",
      [](const std::vector<int>& labels, const Vector& degree) {
        return build_constraint(labels, degree);
      },
      py::arg("group_labels"), py::arg("degree"));
  m.def("nullspace_basis", &nullspace_basis, py::arg("f"));
  m.def("fairness_residual", &fairness_residual, py::arg("f"), py::arg("h"));

  const auto with_config = [](const AffinityModel& model, const FairnessConstraint& fc,
                              const std::string& solver, int k, double alpha0, int admm_iters,
                              double residual_stop, std::uint64_t seed, double gtol, double ftol,
                              bool use_lanczos) {
    const SolverConfig cfg =
        solver_config(k, alpha0, admm_iters, residual_stop, seed, gtol, ftol, use_lanczos);
    if (solver == "ofsc") return result_dict(solve_ofsc(model, fc, cfg));
    if (solver == "sfsc") return result_dict(solve_sfsc(model, fc, cfg));
    if (solver == "admm") {
      Rng rng(seed);
      return result_dict(solve_admm_dc(model, fc, cfg, rng));
    }
    throw ContractError("solve: unknown solver '" + solver + "'");
  };
  m.def("solve", with_config, py::arg("model"), py::arg("constraint"), py::arg("solver"),
        py::arg("k"), py::arg("alpha0") = 0.005, py::arg("admm_iters") = 10,
        py::arg("residual_stop") = -1.0, py::arg("seed") = 0, py::arg("gtol") = 1e-3,
        py::arg("ftol") = 1e-4, py::arg("use_lanczos") = false);

  m.def(
      "kmeans",
      [](const Matrix& rows, int k, int restarts, int max_iters, double tol,
         std::uint64_t seed) {
        KmeansConfig cfg;
        cfg.k = k;
        cfg.restarts = restarts;
        cfg.max_iters = max_iters;
        cfg.tol = tol;
        cfg.seed = seed;
        const KmeansResult res = kmeans(rows, cfg);
        return py::make_tuple(res.labels, res.inertia);
      },
      py::arg("rows"), py::arg("k"), py::arg("restarts") = 10, py::arg("max_iters") = 300,
      py::arg("tol") = 1e-8, py::arg("seed") = 0);
  m.def("indicator_embedding", &indicator_embedding, py::arg("labels"), py::arg("k"));

  m.def("balance", &balance, py::arg("labels"), py::arg("group_labels"), py::arg("cluster"),
        py::arg("h"));
  m.def("average_balance", &average_balance, py::arg("labels"), py::arg("group_labels"),
        py::arg("k"), py::arg("h"));
  m.def("min_balance", &min_balance, py::arg("labels"), py::arg("group_labels"), py::arg("k"),
        py::arg("h"));
  m.def("clustering_cost", &clustering_cost, py::arg("x"), py::arg("model"));
  m.def("orthogonality_residual", &orthogonality_residual, py::arg("h"));
}
