#include "fairsc/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace fairsc {

namespace {

void require_finite(const Matrix& a, const char* who) {
  if (!a.allFinite()) throw ContractError(std::string(who) + ": input has non-finite entries");
}

}  // namespace

EigResult sym_eig(const Matrix& a) {
  if (a.rows() != a.cols()) throw ContractError("sym_eig: matrix is not square");
  require_finite(a, "sym_eig");
  const double scale = std::max(a.norm(), 1.0);
  if ((a - a.transpose()).norm() > 1e-8 * scale)
    throw ContractError("sym_eig: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("sym_eig: solver did not converge");

  // Eigen returns ascending order; flip to descending.
  const Index n = a.rows();
  EigResult out;
  out.values = solver.eigenvalues().reverse();
  out.vectors.resize(n, n);
  for (Index j = 0; j < n; ++j) out.vectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  return out;
}

SvdResult thin_svd(const Matrix& a) {
  if (a.rows() < a.cols()) throw ContractError("thin_svd: expected n >= k");
  require_finite(a, "thin_svd");

  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out;
  out.left = svd.matrixU();
  out.singular_values = svd.singularValues();
  out.right = svd.matrixV();
  return out;
}

Matrix spd_inv_sqrt(const Matrix& s, double floor_value) {
  EigResult eig = sym_eig(s);
  Vector inv_sqrt = eig.values.unaryExpr([floor_value](double lambda) {
    return 1.0 / std::sqrt(std::max(lambda, floor_value));
  });
  return eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose();
}

Matrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) throw ContractError("gaussian_matrix: dimensions must be positive");
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.normal();
  return out;
}

namespace {

struct LinePoint {
  double step;
  double f;
  double slope;
};

// Cubic interpolation of a trial step between two bracketing points,
// safeguarded to the interior of the interval.
double interpolate_step(const LinePoint& lo, const LinePoint& hi) {
  const double d1 = lo.slope + hi.slope - 3.0 * (lo.f - hi.f) / (lo.step - hi.step);
  const double disc = d1 * d1 - lo.slope * hi.slope;
  double trial;
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), hi.step - lo.step);
    trial = hi.step - (hi.step - lo.step) * (hi.slope + d2 - d1) / (hi.slope - lo.slope + 2.0 * d2);
  } else {
    trial = 0.5 * (lo.step + hi.step);
  }
  const double left = std::min(lo.step, hi.step);
  const double right = std::max(lo.step, hi.step);
  const double margin = 0.1 * (right - left);
  if (!(trial > left + margin && trial < right - margin)) trial = 0.5 * (left + right);
  return trial;
}

struct LineSearchOutcome {
  double step = 0.0;
  double f = 0.0;
  bool ok = false;
  int evals = 0;
};

// Strong-Wolfe line search (bracket + zoom). `eval` returns f and writes the
// gradient for the trial point; directional slope is recomputed here.
LineSearchOutcome strong_wolfe(const ObjectiveFn& fn, const Matrix& x, const Matrix& direction,
                               double f0, double slope0, Matrix& x_trial, Matrix& grad_trial,
                               double c1, double c2, double initial_step) {
  LineSearchOutcome out;
  constexpr int kMaxBracket = 30;
  constexpr int kMaxZoom = 40;
  constexpr double kMaxStep = 1e20;

  auto eval = [&](double step) {
    x_trial = x + step * direction;
    const double f = fn(x_trial, grad_trial);
    ++out.evals;
    return LinePoint{step, f, grad_trial.cwiseProduct(direction).sum()};
  };

  LinePoint prev{0.0, f0, slope0};
  double step = initial_step;
  LinePoint lo{}, hi{};
  bool bracketed = false;

  for (int i = 0; i < kMaxBracket; ++i) {
    LinePoint cur = eval(step);
    if (!std::isfinite(cur.f)) {
      // back off into the finite region
      step = 0.5 * (prev.step + step);
      continue;
    }
    if (cur.f > f0 + c1 * cur.step * slope0 || (i > 0 && cur.f >= prev.f)) {
      lo = prev;
      hi = cur;
      bracketed = true;
      break;
    }
    if (std::abs(cur.slope) <= -c2 * slope0) {
      out.step = cur.step;
      out.f = cur.f;
      out.ok = true;
      return out;
    }
    if (cur.slope >= 0.0) {
      lo = cur;
      hi = prev;
      bracketed = true;
      break;
    }
    prev = cur;
    step = std::min(2.0 * step, kMaxStep);
    if (step >= kMaxStep) break;
  }
  if (!bracketed) return out;

  for (int i = 0; i < kMaxZoom; ++i) {
    const double trial_step = interpolate_step(lo, hi);
    if (!(std::abs(hi.step - lo.step) > 1e-16 * std::max(1.0, std::abs(lo.step)))) break;
    LinePoint cur = eval(trial_step);
    if (!std::isfinite(cur.f) || cur.f > f0 + c1 * cur.step * slope0 || cur.f >= lo.f) {
      hi = cur;
      continue;
    }
    if (std::abs(cur.slope) <= -c2 * slope0) {
      out.step = cur.step;
      out.f = cur.f;
      out.ok = true;
      return out;
    }
    if (cur.slope * (hi.step - lo.step) >= 0.0) hi = lo;
    lo = cur;
  }
  return out;
}

}  // namespace

LbfgsResult lbfgs_minimize(const ObjectiveFn& fn, const Matrix& x0, const LbfgsConfig& cfg) {
  if (!(cfg.wolfe_c1 > 0.0 && cfg.wolfe_c1 < cfg.wolfe_c2 && cfg.wolfe_c2 < 1.0))
    throw ContractError("lbfgs_minimize: need 0 < wolfe_c1 < wolfe_c2 < 1");
  if (!(cfg.gtol > 0.0 && cfg.ftol > 0.0))
    throw ContractError("lbfgs_minimize: tolerances must be positive");

  Matrix x = x0;
  Matrix grad(x.rows(), x.cols());
  double f = fn(x, grad);

  LbfgsResult best;
  best.x = x;
  best.f = f;

  std::deque<Matrix> s_hist, y_hist;
  std::deque<double> rho_hist;
  Matrix x_trial(x.rows(), x.cols()), grad_trial(x.rows(), x.cols());
  double gamma = 1.0;  // initial Hessian scaling

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    best.iterations = iter;
    if (grad.cwiseAbs().maxCoeff() <= cfg.gtol) {
      best.status = LbfgsStatus::kGradientTolerance;
      return best;
    }

    // two-loop recursion
    Matrix q = grad;
    const int m = static_cast<int>(s_hist.size());
    std::vector<double> alpha(m);
    for (int i = m - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * s_hist[i].cwiseProduct(q).sum();
      q.noalias() -= alpha[i] * y_hist[i];
    }
    q *= gamma;
    for (int i = 0; i < m; ++i) {
      const double beta = rho_hist[i] * y_hist[i].cwiseProduct(q).sum();
      q.noalias() += (alpha[i] - beta) * s_hist[i];
    }
    Matrix direction = -q;

    double slope = grad.cwiseProduct(direction).sum();
    if (!(slope < 0.0)) {
      // not a descent direction: fall back to steepest descent
      direction = -grad;
      slope = -grad.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      gamma = 1.0;
    }

    const double initial_step = (iter == 0 && m == 0)
                                    ? std::min(1.0, 1.0 / std::max(grad.cwiseAbs().maxCoeff(), 1e-12))
                                    : 1.0;
    LineSearchOutcome ls = strong_wolfe(fn, x, direction, f, slope, x_trial, grad_trial,
                                        cfg.wolfe_c1, cfg.wolfe_c2, initial_step);
    if (!ls.ok) {
      best.status = LbfgsStatus::kLineSearchFailure;
      return best;
    }

    Matrix s = ls.step * direction;
    Matrix y = grad_trial - grad;
    const double prev_f = f;
    x += s;
    f = ls.f;
    grad = grad_trial;

    if (f < best.f) {
      best.f = f;
      best.x = x;
    }

    const double sy = s.cwiseProduct(y).sum();
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      gamma = sy / y_hist.back().squaredNorm();
      if (static_cast<int>(s_hist.size()) > cfg.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    const double denom = std::max({std::abs(prev_f), std::abs(f), 1.0});
    if ((prev_f - f) / denom <= cfg.ftol) {
      best.iterations = iter + 1;
      best.status = LbfgsStatus::kObjectiveTolerance;
      return best;
    }
  }
  best.iterations = cfg.max_iters;
  best.status = LbfgsStatus::kMaxIterations;
  return best;
}

}  // namespace fairsc
