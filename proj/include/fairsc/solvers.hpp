#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsc/affinity.hpp"
#include "fairsc/fairness.hpp"
#include "fairsc/numerics.hpp"
#include "fairsc/types.hpp"

namespace fairsc {

struct SolverConfig {
  int k = 2;                   // number of clusters / embedding columns
  double alpha0 = 0.005;       // initial ADMM penalty, must stay < 1
  int max_admm_iters = 10;     // T
  double tau = 2.0;            // penalty multiplier
  double mu = 10.0;            // residual-ratio threshold
  double eig_floor = 1e-12;    // relative eigenvalue floor in the dual solve
  LbfgsConfig lbfgs;           // dual subproblem optimizer settings
  double residual_stop = -1.0; // early-stop on max(||R||,||S||); <0 means 1e-6*sqrt(n*k)
  std::uint64_t seed = 0;      // dual initialization stream
  bool use_lanczos = false;    // iterative eigensolver path for the projected problem
};

/// Per-iteration ADMM log record, exported as JSON lines by the CLI.
struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;  // Tr(H^T M H)
  double residual_primal = 0.0;
  double residual_dual = 0.0;
  double alpha = 0.0;
  int dual_iterations = 0;
  std::string dual_status;
};

/// Mutable ADMM iterate. H stays orthonormal after every H-update and Y stays
/// in null(F^T) after every Y-update.
struct AdmmState {
  Matrix H;
  Matrix Y;
  Matrix P;
  double alpha = 0.0;
  int iteration = 0;
  double residual_primal = 0.0;
  double residual_dual = 0.0;
  std::vector<IterationRecord> trace;
};

/// Common solver output: the continuous embedding plus the degree-scaled rows
/// handed to k-means.
struct EmbeddingResult {
  Matrix embedding;        // H (o-FSC, ADMM) or Y' (s-FSC)
  Matrix rows_for_kmeans;  // D^{-1/2} * embedding
  Vector eigenvalues;      // top-k eigenvalues (baselines only)
  std::string solver_name;
  double wall_time_s = 0.0;
  double objective = 0.0;  // Tr(H^T M H)
  int admm_iterations = 0;
  bool flagged = false;
  std::string status = "ok";
  std::vector<IterationRecord> trace;
};

/// Dual formulation of the ADMM H-subproblem for fixed (Y, P, alpha):
///
///   minimize  psi(V) = phi_star(V) - nuclear_term(V)
///
/// where phi_star is the conjugate of the quadratic part of the augmented
/// Lagrangian and nuclear_term(V) = Tr(sqrt(V^T M^2 V)) is the conjugate of
/// the Stiefel indicator evaluated at M V. M^2 is never formed; both the
/// value and the gradient come from one k-by-k eigendecomposition of
/// (MV)^T (MV).
class DualSubproblem {
 public:
  DualSubproblem(const AffinityModel& model, const Matrix& y, const Matrix& p, double alpha,
                 double eig_floor);

  /// A(V) = (V + P - alpha * Y) / (1 - alpha); equals the gradient of
  /// phi_star and the argmax in its definition.
  Matrix anchor(const Matrix& v) const;

  double phi_star(const Matrix& v) const;

  /// Tr(sqrt(V^T M^2 V)), i.e. the nuclear norm of M V.
  double nuclear_term(const Matrix& v) const;

  double value(const Matrix& v) const;
  double value_and_gradient(const Matrix& v, Matrix& grad) const;

 private:
  const AffinityModel& model_;
  const Matrix& y_;
  const Matrix& p_;
  double alpha_;
  double eig_floor_;
};

struct HSubproblemResult {
  Matrix h;           // recovered primal iterate, orthonormal columns
  Matrix dual_point;  // V hat, used to warm start the next round
  double dual_value = 0.0;
  int dual_iterations = 0;
  LbfgsStatus dual_status = LbfgsStatus::kMaxIterations;
  bool recovery_flagged = false;
};

/// Solves the dual with L-BFGS (warm started when a previous dual point is
/// given, otherwise from a standard normal draw) and recovers the primal H.
HSubproblemResult h_subproblem(const AdmmState& state, const AffinityModel& model,
                               const SolverConfig& cfg, Rng& rng,
                               const Matrix* warm_start = nullptr);

/// Orthogonal-Procrustes recovery: H = L R^T from the thin SVD of M V.
/// Rank deficiency of M V is flagged, not fatal.
Matrix primal_recovery(const Matrix& v_hat, const AffinityModel& model,
                       bool* flagged = nullptr);

/// Closed-form Y-update: Y = Q (Q^T M H + Q^T P / alpha). `mh` must be the
/// precomputed product M * H.
Matrix y_subproblem(const Matrix& mh, const Matrix& p, double alpha,
                    const FairnessConstraint& fc);

/// Residual-balancing penalty update, clamped below 1.
double penalty_update(double residual_primal, double residual_dual, double alpha,
                      const SolverConfig& cfg);

/// Nullspace eigensolver baseline: top-k eigenvectors of Z^T M Z mapped back
/// through Z. Requires the dense affinity.
EmbeddingResult solve_ofsc(const AffinityModel& model, const FairnessConstraint& fc,
                           const SolverConfig& cfg);

/// Projected-eigenproblem baseline: top-k eigenpairs of P M P with P = Z Z^T,
/// returning the projected eigenvectors directly.
EmbeddingResult solve_sfsc(const AffinityModel& model, const FairnessConstraint& fc,
                           const SolverConfig& cfg);

/// The ADMM difference-of-convex solver (dual L-BFGS H-step, Procrustes
/// recovery, closed-form Y-step, multiplier and penalty updates).
EmbeddingResult solve_admm_dc(const AffinityModel& model, const FairnessConstraint& fc,
                              const SolverConfig& cfg, Rng& rng);

const char* lbfgs_status_name(LbfgsStatus status);

}  // namespace fairsc
