#include "fairsc/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace fairsc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_embedding_budget(const FairnessConstraint& fc, int k) {
  const Index feasible_dim = fc.nullspace.cols();
  if (k < 1) throw ContractError("solver: k must be positive");
  if (k > feasible_dim)
    throw ContractError("solver: k = " + std::to_string(k) +
                        " exceeds the feasible dimension n - h + 1 = " +
                        std::to_string(feasible_dim));
}

double auto_residual_stop(const SolverConfig& cfg, Index n) {
  if (cfg.residual_stop > 0.0) return cfg.residual_stop;
  return 1e-6 * std::sqrt(static_cast<double>(n) * cfg.k);
}

}  // namespace

const char* lbfgs_status_name(LbfgsStatus status) {
  switch (status) {
    case LbfgsStatus::kGradientTolerance: return "gtol";
    case LbfgsStatus::kObjectiveTolerance: return "ftol";
    case LbfgsStatus::kMaxIterations: return "max_iters";
    case LbfgsStatus::kLineSearchFailure: return "line_search_failure";
  }
  return "unknown";
}

DualSubproblem::DualSubproblem(const AffinityModel& model, const Matrix& y, const Matrix& p,
                               double alpha, double eig_floor)
    : model_(model), y_(y), p_(p), alpha_(alpha), eig_floor_(eig_floor) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ContractError("DualSubproblem: alpha must lie in (0, 1)");
}

Matrix DualSubproblem::anchor(const Matrix& v) const {
  return (v + p_ - alpha_ * y_) / (1.0 - alpha_);
}

double DualSubproblem::phi_star(const Matrix& v) const {
  const Matrix a = anchor(v);
  return 0.5 * v.squaredNorm() - 0.5 * (a - v).squaredNorm() +
         0.5 * alpha_ * (a - y_).squaredNorm() + p_.cwiseProduct(a).sum();
}

double DualSubproblem::nuclear_term(const Matrix& v) const {
  const Matrix mv = model_.apply(v);
  const EigResult eig = sym_eig(mv.transpose() * mv);
  double total = 0.0;
  for (Index i = 0; i < eig.values.size(); ++i)
    total += std::sqrt(std::max(eig.values(i), 0.0));
  return total;
}

double DualSubproblem::value(const Matrix& v) const { return phi_star(v) - nuclear_term(v); }

double DualSubproblem::value_and_gradient(const Matrix& v, Matrix& grad) const {
  const Matrix mv = model_.apply(v);
  const EigResult eig = sym_eig(mv.transpose() * mv);

  double nuclear = 0.0;
  for (Index i = 0; i < eig.values.size(); ++i)
    nuclear += std::sqrt(std::max(eig.values(i), 0.0));

  // (V^T M^2 V)^{-1/2} with a relative floor; reused from the same
  // factorization as the value.
  const double floor_abs = eig_floor_ * std::max(eig.values.maxCoeff(), 1.0);
  Vector inv_sqrt(eig.values.size());
  for (Index i = 0; i < eig.values.size(); ++i)
    inv_sqrt(i) = 1.0 / std::sqrt(std::max(eig.values(i), floor_abs));
  const Matrix whitened =
      mv * (eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose());

  grad = anchor(v) - model_.apply(whitened);
  return phi_star(v) - nuclear;
}

HSubproblemResult h_subproblem(const AdmmState& state, const AffinityModel& model,
                               const SolverConfig& cfg, Rng& rng, const Matrix* warm_start) {
  DualSubproblem dual(model, state.Y, state.P, state.alpha, cfg.eig_floor);
  const Matrix v0 = warm_start != nullptr ? *warm_start
                                          : gaussian_matrix(rng, model.size(), cfg.k);

  LbfgsResult opt = lbfgs_minimize(
      [&dual](const Matrix& v, Matrix& grad) { return dual.value_and_gradient(v, grad); }, v0,
      cfg.lbfgs);

  HSubproblemResult out;
  out.dual_point = std::move(opt.x);
  out.dual_value = opt.f;
  out.dual_iterations = opt.iterations;
  out.dual_status = opt.status;
  out.h = primal_recovery(out.dual_point, model, &out.recovery_flagged);
  return out;
}

Matrix primal_recovery(const Matrix& v_hat, const AffinityModel& model, bool* flagged) {
  const SvdResult svd = thin_svd(model.apply(v_hat));
  if (flagged != nullptr) {
    const double top = svd.singular_values(0);
    const double bottom = svd.singular_values(svd.singular_values.size() - 1);
    *flagged = !(bottom > 1e-12 * std::max(top, 1.0));
  }
  return svd.left * svd.right.transpose();
}

Matrix y_subproblem(const Matrix& mh, const Matrix& p, double alpha,
                    const FairnessConstraint& fc) {
  if (!(alpha > 0.0)) throw ContractError("y_subproblem: alpha must be positive");
  const Matrix& basis = fc.nullspace;
  return basis * (basis.transpose() * mh + (basis.transpose() * p) / alpha);
}

double penalty_update(double residual_primal, double residual_dual, double alpha,
                      const SolverConfig& cfg) {
  double next = alpha;
  if (residual_primal > cfg.mu * residual_dual)
    next = alpha * cfg.tau;
  else if (residual_dual > cfg.mu * residual_primal)
    next = alpha / cfg.tau;
  return std::min(next, 0.99);  // the dual derivation needs alpha < 1
}

EmbeddingResult solve_ofsc(const AffinityModel& model, const FairnessConstraint& fc,
                           const SolverConfig& cfg) {
  const auto start = Clock::now();
  check_embedding_budget(fc, cfg.k);

  const Matrix& basis = fc.nullspace;  // Z
  const Matrix reduced = basis.transpose() * model.dense() * basis;  // M_Z
  const EigResult eig = sym_eig(reduced);

  EmbeddingResult out;
  out.solver_name = "ofsc";
  out.eigenvalues = eig.values.head(cfg.k);
  out.embedding = basis * eig.vectors.leftCols(cfg.k);
  out.rows_for_kmeans = model.scale_rows_inv_sqrt_degree(out.embedding);
  out.objective = trace_quadratic(model, out.embedding);
  out.wall_time_s = seconds_since(start);
  return out;
}

namespace {

// Top-k eigenpairs of a symmetric operator by Lanczos with full
// reorthogonalization; single Krylov sweep, no restarts.
bool lanczos_topk(const std::function<Matrix(const Matrix&)>& apply, Index n, int k,
                  Rng& rng, Vector* values, Matrix* vectors) {
  const Index dim = std::min<Index>(n, std::max<Index>(2 * k + 20, 40));
  Matrix basis(n, dim);
  Vector diag(dim), off(dim);

  Matrix q = gaussian_matrix(rng, n, 1);
  q /= q.norm();
  basis.col(0) = q;
  double beta = 0.0;
  Index m = 0;
  for (Index j = 0; j < dim; ++j) {
    m = j + 1;
    Matrix w = apply(basis.col(j));
    if (j > 0) w -= beta * basis.col(j - 1);
    diag(j) = (basis.col(j).transpose() * w)(0, 0);
    w -= diag(j) * basis.col(j);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    beta = w.norm();
    if (j + 1 == dim) break;
    if (beta < 1e-13) {
      // invariant subspace hit: continue from a fresh orthogonalized direction
      Matrix fresh = gaussian_matrix(rng, n, 1);
      for (int pass = 0; pass < 2; ++pass)
        fresh -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * fresh);
      const double norm = fresh.norm();
      if (norm < 1e-13) break;
      off(j) = 0.0;
      basis.col(j + 1) = fresh / norm;
      beta = 0.0;
      continue;
    }
    off(j) = beta;
    basis.col(j + 1) = w / beta;
  }

  Matrix tri = Matrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    tri(j, j) = diag(j);
    if (j + 1 < m) {
      tri(j, j + 1) = off(j);
      tri(j + 1, j) = off(j);
    }
  }
  const EigResult eig = sym_eig(tri);
  if (m < k) return false;
  *values = eig.values.head(k);
  *vectors = basis.leftCols(m) * eig.vectors.leftCols(k);
  // convergence check on the Ritz residuals
  bool converged = true;
  for (int i = 0; i < k; ++i) {
    const double resid = (apply(vectors->col(i)) - (*values)(i) * vectors->col(i)).norm();
    if (resid > 1e-8 * std::max(1.0, std::abs((*values)(i)))) converged = false;
  }
  return converged;
}

}  // namespace

EmbeddingResult solve_sfsc(const AffinityModel& model, const FairnessConstraint& fc,
                           const SolverConfig& cfg) {
  const auto start = Clock::now();
  check_embedding_budget(fc, cfg.k);

  EmbeddingResult out;
  out.solver_name = "sfsc";
  const Matrix& basis = fc.nullspace;  // Z

  if (cfg.use_lanczos) {
    auto apply_projected = [&](const Matrix& x) {
      const Matrix projected = basis * (basis.transpose() * x);
      const Matrix mapped = model.apply(projected);
      return Matrix(basis * (basis.transpose() * mapped));
    };
    Rng rng(cfg.seed);
    Vector values;
    Matrix vectors;
    if (!lanczos_topk(apply_projected, model.size(), cfg.k, rng, &values, &vectors)) {
      out.flagged = true;
      out.status = "eigensolver_not_converged";
    }
    out.eigenvalues = values;
    out.embedding = vectors;
  } else {
    const Matrix reduced = basis.transpose() * model.dense() * basis;       // M_Z
    const Matrix projected = basis * reduced * basis.transpose();           // P M P
    const EigResult eig = sym_eig(projected);
    out.eigenvalues = eig.values.head(cfg.k);
    out.embedding = eig.vectors.leftCols(cfg.k);  // Y', used directly
  }

  out.rows_for_kmeans = model.scale_rows_inv_sqrt_degree(out.embedding);
  out.objective = trace_quadratic(model, out.embedding);
  out.wall_time_s = seconds_since(start);
  return out;
}

EmbeddingResult solve_admm_dc(const AffinityModel& model, const FairnessConstraint& fc,
                              const SolverConfig& cfg, Rng& rng) {
  const auto start = Clock::now();
  check_embedding_budget(fc, cfg.k);
  if (!(cfg.alpha0 > 0.0 && cfg.alpha0 < 1.0))
    throw ContractError("solve_admm_dc: alpha0 must lie in (0, 1)");
  if (cfg.max_admm_iters < 1) throw ContractError("solve_admm_dc: need at least one iteration");

  const Index n = model.size();
  const double stop = auto_residual_stop(cfg, n);

  AdmmState state;
  state.H = Matrix::Zero(n, cfg.k);
  state.Y = Matrix::Zero(n, cfg.k);
  state.P = Matrix::Zero(n, cfg.k);
  state.alpha = cfg.alpha0;

  EmbeddingResult out;
  out.solver_name = "admm";
  Matrix warm;
  bool have_warm = false;

  for (int iter = 0; iter < cfg.max_admm_iters; ++iter) {
    HSubproblemResult hs =
        h_subproblem(state, model, cfg, rng, have_warm ? &warm : nullptr);
    state.H = std::move(hs.h);
    warm = std::move(hs.dual_point);
    have_warm = true;
    if (hs.dual_status == LbfgsStatus::kLineSearchFailure) {
      out.flagged = true;
      out.status = "dual_line_search_failure";
    }
    if (hs.recovery_flagged) {
      out.flagged = true;
      out.status = "rank_deficient_recovery";
    }

    const Matrix mh = model.apply(state.H);
    const Matrix y_next = y_subproblem(mh, state.P, state.alpha, fc);
    const Matrix residual = mh - y_next;
    state.P += state.alpha * residual;
    state.residual_primal = residual.norm();
    state.residual_dual = state.alpha * (state.Y - y_next).norm();
    state.Y = y_next;
    state.iteration = iter + 1;

    IterationRecord record;
    record.iteration = state.iteration;
    record.objective = state.H.cwiseProduct(mh).sum();
    record.residual_primal = state.residual_primal;
    record.residual_dual = state.residual_dual;
    record.alpha = state.alpha;
    record.dual_iterations = hs.dual_iterations;
    record.dual_status = lbfgs_status_name(hs.dual_status);
    state.trace.push_back(record);

    state.alpha = penalty_update(state.residual_primal, state.residual_dual, state.alpha, cfg);
    if (std::max(state.residual_primal, state.residual_dual) <= stop) break;
  }

  out.embedding = state.H;
  out.rows_for_kmeans = model.scale_rows_inv_sqrt_degree(state.H);
  out.objective = state.trace.empty() ? 0.0 : state.trace.back().objective;
  out.admm_iterations = state.iteration;
  out.trace = std::move(state.trace);
  out.wall_time_s = seconds_since(start);
  return out;
}

}  // namespace fairsc
