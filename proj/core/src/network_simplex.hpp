#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tetot::detail {

// Primal network simplex for the uncapacitated transportation problem on the
// complete bipartite graph (m sources, n sinks). Arc a = i * n + j carries
// flow from source i to sink j at cost[a]. Supplies must be nonnegative and
// balance exactly.
//
// The basis is a spanning tree over the m + n nodes plus an artificial root,
// stored with parent/thread/successor-count arrays so that each pivot only
// touches the subtree that moves. Entering arcs come from block search;
// leaving arcs are chosen to keep the tree strongly feasible, which rules
// out cycling on degenerate pivots.
class TransportNetworkSimplex {
 public:
  TransportNetworkSimplex(const double* cost, std::size_t m, std::size_t n,
                          std::vector<double> supply, std::vector<double> demand);

  // Returns false if the iteration limit was hit before optimality.
  bool run(std::size_t max_iterations);

  double flow(std::size_t i, std::size_t j) const { return flow_[i * n_ + j]; }
  // Dual potentials: reduced cost of arc (i,j) is cost + pi[i] - pi[m + j].
  double potential(std::size_t node) const { return pi_[node]; }
  std::size_t iterations() const { return iterations_; }
  // Real arcs currently in the spanning tree.
  std::vector<std::size_t> basic_arcs() const;
  // Flow left on artificial arcs (zero for a balanced, solved problem).
  double artificial_flow() const;

  // Verifies thread/parent/succ_num bookkeeping; for tests.
  bool tree_is_consistent() const;

 private:
  enum : std::int8_t { kLower = 1, kTree = 0 };
  enum : std::int8_t { kUp = 1, kDown = -1 };

  int source_of(std::size_t arc) const {
    return arc < arc_count_ ? static_cast<int>(arc / n_) : art_source_[arc - arc_count_];
  }
  int target_of(std::size_t arc) const {
    return arc < arc_count_ ? static_cast<int>(m_ + arc % n_) : art_target_[arc - arc_count_];
  }
  double cost_of(std::size_t arc) const {
    return arc < arc_count_ ? cost_[arc] : art_cost_[arc - arc_count_];
  }

  bool find_entering_arc();
  void find_join_node();
  bool find_leaving_arc();
  void change_flow();
  void update_tree_structure();
  void update_potential();

  const double* cost_;
  std::size_t m_, n_;
  std::size_t node_count_;  // m + n (root excluded)
  std::size_t arc_count_;   // m * n
  int root_;

  std::vector<double> flow_;        // real arcs then artificial arcs
  std::vector<std::int8_t> state_;  // real arcs then artificial arcs
  std::vector<int> art_source_, art_target_;
  std::vector<double> art_cost_;

  std::vector<double> pi_;
  std::vector<int> parent_, pred_, thread_, rev_thread_, succ_num_, last_succ_;
  std::vector<std::int8_t> pred_dir_;
  std::vector<int> dirty_revs_;

  std::size_t block_size_;
  std::size_t next_arc_ = 0;
  double tolerance_;

  std::size_t in_arc_ = 0;
  int join_ = 0, u_in_ = 0, v_in_ = 0, u_out_ = 0, v_out_ = 0;
  double delta_ = 0.0;
  std::size_t iterations_ = 0;
};

}  // namespace tetot::detail
