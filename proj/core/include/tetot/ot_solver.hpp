#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tetot/types.hpp"

namespace tetot {

/// Pairwise ground costs; finite and nonnegative.
class CostMatrix {
 public:
  explicit CostMatrix(Matrix entries);

  const Matrix& entries() const { return entries_; }
  std::size_t rows() const { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(entries_.cols()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix entries_;
};

/// Point of the probability simplex. Inputs within 1e-12 of summing to one
/// are renormalized; anything further off is an InputError.
class Weights {
 public:
  explicit Weights(std::vector<double> values);
  static Weights uniform(std::size_t n);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  bool is_uniform() const { return uniform_; }

 private:
  std::vector<double> values_;
  bool uniform_ = false;
};

struct TransportPlan {
  Matrix coupling;
  // Basic cells (i, j) of the final simplex basis; empty for Sinkhorn.
  std::vector<std::pair<std::size_t, std::size_t>> basis;
};

struct DualPotentials {
  Vector u;  // one per source point
  Vector v;  // one per target point
};

struct OtResult {
  double cost = 0.0;  // <plan, C>
  TransportPlan plan;
  std::optional<DualPotentials> duals;
  std::size_t iterations = 0;
  std::string solver_tag;
  bool converged = true;  // false when Sinkhorn hit max_iter
};

/// Exact OT via the primal network simplex on the complete bipartite graph.
/// Returns an optimal plan together with dual potentials satisfying
/// u_i + v_j <= C_ij everywhere and equality on the plan's support.
OtResult solve_exact(const CostMatrix& cost, const Weights& a, const Weights& b);

struct SinkhornOptions {
  double epsilon = 0.0;  // <= 0 selects 0.01 * mean(C)
  std::size_t max_iter = 10000;
  double tol = 1e-9;  // L1 marginal violation before rounding
};

/// Entropic OT in the log domain with epsilon annealing. The final iterate is
/// rounded onto the feasible set, so the returned plan is a valid coupling.
OtResult solve_sinkhorn(const CostMatrix& cost, const Weights& a, const Weights& b,
                        const SinkhornOptions& options = {});

/// (1/n) * min over permutations of sum_i C[i, sigma(i)]. Square, n <= 8.
double brute_force_oracle(const CostMatrix& cost);

/// Nonnegativity and both marginals within tol.
bool verify_plan(const TransportPlan& plan, const Weights& a, const Weights& b, double tol);

/// Frobenius inner product <plan, C>.
double transport_cost(const Matrix& plan, const CostMatrix& cost);

}  // namespace tetot
