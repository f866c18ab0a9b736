#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "network_simplex.hpp"
#include "tetot/errors.hpp"
#include "tetot/ot_solver.hpp"

namespace tetot {

CostMatrix::CostMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) throw InputError("cost matrix must be non-empty");
  if (!entries_.allFinite()) throw InputError("cost matrix contains non-finite entries");
  if (entries_.minCoeff() < 0.0) throw InputError("cost matrix contains negative entries");
}

Weights::Weights(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("weights must be non-empty");
  double sum = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("weights must be finite and nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) >= 1e-12)
    throw InputError("weights sum to " + std::to_string(sum) + ", not 1");
  for (double& v : values_) v /= sum;
  const double u = 1.0 / static_cast<double>(values_.size());
  uniform_ = std::all_of(values_.begin(), values_.end(), [u](double v) { return std::abs(v - u) <= 1e-15; });
}

Weights Weights::uniform(std::size_t n) {
  if (n == 0) throw InputError("weights must be non-empty");
  return Weights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double transport_cost(const Matrix& plan, const CostMatrix& cost) {
  if (plan.rows() != cost.entries().rows() || plan.cols() != cost.entries().cols())
    throw InputError("plan and cost matrix shapes differ");
  return plan.cwiseProduct(cost.entries()).sum();
}

OtResult solve_exact(const CostMatrix& cost, const Weights& a, const Weights& b) {
  const std::size_t m = cost.rows();
  const std::size_t n = cost.cols();
  if (a.size() != m || b.size() != n)
    throw InputError("weights of length " + std::to_string(a.size()) + "/" + std::to_string(b.size()) +
                     " do not match a " + std::to_string(m) + "x" + std::to_string(n) + " cost matrix");

  // Uniform marginals are scaled to integer supplies (n per source, m per
  // sink) so every pivot is exact; general weights run in floating point.
  const bool integral = a.is_uniform() && b.is_uniform();
  std::vector<double> supply(m), demand(n);
  double scale = 1.0;
  if (integral) {
    std::fill(supply.begin(), supply.end(), static_cast<double>(n));
    std::fill(demand.begin(), demand.end(), static_cast<double>(m));
    scale = static_cast<double>(m) * static_cast<double>(n);
  } else {
    supply = a.values();
    demand = b.values();
    const double gap = std::accumulate(supply.begin(), supply.end(), 0.0) -
                       std::accumulate(demand.begin(), demand.end(), 0.0);
    if (std::abs(gap) > 1e-9) throw InputError("source and target weights have different total mass");
    // Absorb rounding in the largest demand so the network balances exactly.
    auto big = std::max_element(demand.begin(), demand.end());
    *big += gap;
  }

  detail::TransportNetworkSimplex simplex(cost.entries().data(), m, n, std::move(supply), std::move(demand));
  simplex.run(std::numeric_limits<std::size_t>::max());

  OtResult result;
  result.solver_tag = "network_simplex";
  result.iterations = simplex.iterations();
  result.plan.coupling = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  double total = 0.0;
  for (std::size_t e : simplex.basic_arcs()) {
    const std::size_t i = e / n, j = e % n;
    const double f = simplex.flow(i, j) / scale;
    result.plan.coupling(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f;
    result.plan.basis.emplace_back(i, j);
    total += f * cost(i, j);
  }
  result.cost = total;

  DualPotentials duals{Vector(static_cast<Eigen::Index>(m)), Vector(static_cast<Eigen::Index>(n))};
  for (std::size_t i = 0; i < m; ++i) duals.u(static_cast<Eigen::Index>(i)) = -simplex.potential(i);
  for (std::size_t j = 0; j < n; ++j) duals.v(static_cast<Eigen::Index>(j)) = simplex.potential(m + j);
  // Potentials are defined up to u += c, v -= c; center u for readability.
  const double shift = duals.u.mean();
  duals.u.array() -= shift;
  duals.v.array() += shift;
  result.duals = std::move(duals);
  return result;
}

double brute_force_oracle(const CostMatrix& cost) {
  const std::size_t n = cost.rows();
  if (cost.cols() != n) throw InputError("brute-force oracle needs a square cost matrix");
  if (n > 8) throw InputError("brute-force oracle limited to n <= 8 (got " + std::to_string(n) + ")");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cost(i, perm[i]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(n);
}

bool verify_plan(const TransportPlan& plan, const Weights& a, const Weights& b, double tol) {
  const Matrix& p = plan.coupling;
  if (static_cast<std::size_t>(p.rows()) != a.size() || static_cast<std::size_t>(p.cols()) != b.size())
    throw InputError("plan shape does not match the weights");
  if (!p.allFinite() || p.minCoeff() < -tol) return false;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    if (std::abs(p.row(i).sum() - a[static_cast<std::size_t>(i)]) > tol) return false;
  for (Eigen::Index j = 0; j < p.cols(); ++j)
    if (std::abs(p.col(j).sum() - b[static_cast<std::size_t>(j)]) > tol) return false;
  return true;
}

}  // namespace tetot
