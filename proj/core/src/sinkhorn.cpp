// Log-domain Sinkhorn with epsilon annealing.
//
// Potentials f, g parameterize the plan P_ij = exp((f_i + g_j - C_ij) / eps).
// Each half-step is an exact soft-min, so large C / eps never overflows.
// Annealing starts at eps0 = max(C) and divides by 4 per stage down to the
// target, warm-starting each stage from the previous potentials.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tetot/errors.hpp"
#include "tetot/ot_solver.hpp"

namespace tetot {
namespace {

struct LogSinkhorn {
  const Matrix& c;
  std::vector<double> log_a, log_b;
  Vector f, g;
  Eigen::Index m, n;

  LogSinkhorn(const Matrix& cost, const Weights& a, const Weights& b)
      : c(cost), m(cost.rows()), n(cost.cols()) {
    log_a.resize(a.size());
    log_b.resize(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) log_a[i] = std::log(a[i]);
    for (std::size_t j = 0; j < b.size(); ++j) log_b[j] = std::log(b[j]);
    f = Vector::Zero(m);
    g = Vector::Zero(n);
  }

  // f_i = eps log a_i - eps LSE_j((g_j - C_ij) / eps)
  void update_f(double eps) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::isinf(log_a[static_cast<std::size_t>(i)])) {
        f(i) = -std::numeric_limits<double>::infinity();
        continue;
      }
      double hi = -std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) hi = std::max(hi, (g(j) - c(i, j)) / eps);
      double s = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) s += std::exp((g(j) - c(i, j)) / eps - hi);
      f(i) = eps * (log_a[static_cast<std::size_t>(i)] - hi - std::log(s));
    }
  }

  void update_g(double eps) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::isinf(log_b[static_cast<std::size_t>(j)])) {
        g(j) = -std::numeric_limits<double>::infinity();
        continue;
      }
      double hi = -std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) hi = std::max(hi, (f(i) - c(i, j)) / eps);
      double s = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) s += std::exp((f(i) - c(i, j)) / eps - hi);
      g(j) = eps * (log_b[static_cast<std::size_t>(j)] - hi - std::log(s));
    }
  }

  Matrix plan(double eps) const {
    Matrix p(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const double x = (f(i) + g(j) - c(i, j)) / eps;
        p(i, j) = std::isfinite(x) ? std::exp(x) : 0.0;
      }
    return p;
  }

  // After a g-update columns are exact; measure the row marginal error.
  double row_violation(double eps, const Weights& a) const {
    const Matrix p = plan(eps);
    double err = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) err += std::abs(p.row(i).sum() - a[static_cast<std::size_t>(i)]);
    return err;
  }
};

// Projects an approximate coupling onto the transport polytope: scale rows
// and columns down to their targets, then add the rank-one correction.
Matrix round_to_feasible(Matrix p, const Weights& a, const Weights& b) {
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double s = p.row(i).sum();
    if (s > a[static_cast<std::size_t>(i)]) p.row(i) *= a[static_cast<std::size_t>(i)] / s;
  }
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const double s = p.col(j).sum();
    if (s > b[static_cast<std::size_t>(j)]) p.col(j) *= b[static_cast<std::size_t>(j)] / s;
  }
  Vector err_a(p.rows()), err_b(p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    err_a(i) = std::max(0.0, a[static_cast<std::size_t>(i)] - p.row(i).sum());
  for (Eigen::Index j = 0; j < p.cols(); ++j)
    err_b(j) = std::max(0.0, b[static_cast<std::size_t>(j)] - p.col(j).sum());
  const double mass = err_a.sum();
  if (mass > 0.0) p += err_a * err_b.transpose() / mass;
  return p;
}

}  // namespace

OtResult solve_sinkhorn(const CostMatrix& cost, const Weights& a, const Weights& b,
                        const SinkhornOptions& options) {
  if (a.size() != cost.rows() || b.size() != cost.cols())
    throw InputError("weights do not match the cost matrix shape");
  if (options.max_iter == 0) throw InputError("sinkhorn max_iter must be >= 1");
  if (!(options.tol > 0.0)) throw InputError("sinkhorn tol must be > 0");

  const Matrix& c = cost.entries();
  double eps = options.epsilon;
  if (eps <= 0.0) {
    eps = 0.01 * c.mean();
    if (eps <= 0.0) eps = 1e-3;  // all-zero cost: any plan is optimal
  }
  if (!std::isfinite(eps)) throw InputError("sinkhorn epsilon must be finite");

  LogSinkhorn state(c, a, b);
  std::size_t iterations = 0;
  bool converged = false;
  double used_eps = eps;

  std::vector<double> schedule;
  for (double e = std::max(c.maxCoeff(), eps); e > eps; e /= 4.0) schedule.push_back(e);
  schedule.push_back(eps);

  for (std::size_t stage = 0; stage < schedule.size(); ++stage) {
    const double e = schedule[stage];
    const bool last = stage + 1 == schedule.size();
    // Intermediate stages only need a rough fit before tightening eps.
    const double stage_tol = last ? options.tol : std::max(options.tol, 1e-3);
    used_eps = e;
    converged = false;
    while (iterations < options.max_iter) {
      state.update_f(e);
      state.update_g(e);
      ++iterations;
      if (iterations % 10 == 0 || iterations == options.max_iter) {
        if (state.row_violation(e, a) <= stage_tol) {
          converged = true;
          break;
        }
      }
    }
    if (!converged && state.row_violation(e, a) <= stage_tol) converged = true;
    if (!converged) break;
  }
  if (!converged)
    warn("sinkhorn did not reach marginal tolerance within " + std::to_string(options.max_iter) + " iterations");

  OtResult result;
  result.solver_tag = "sinkhorn";
  result.iterations = iterations;
  result.converged = converged;
  result.plan.coupling = round_to_feasible(state.plan(used_eps), a, b);
  result.cost = transport_cost(result.plan.coupling, cost);
  return result;
}

}  // namespace tetot
