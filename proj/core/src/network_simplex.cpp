#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tetot/errors.hpp"

namespace tetot::detail {

TransportNetworkSimplex::TransportNetworkSimplex(const double* cost, std::size_t m, std::size_t n,
                                                 std::vector<double> supply, std::vector<double> demand)
    : cost_(cost), m_(m), n_(n), node_count_(m + n), arc_count_(m * n), root_(static_cast<int>(m + n)) {
  if (supply.size() != m || demand.size() != n) throw InputError("supply/demand size mismatch");

  double max_cost = 0.0;
  for (std::size_t a = 0; a < arc_count_; ++a) max_cost = std::max(max_cost, std::abs(cost_[a]));
  // Artificial arcs must be costlier than any path through real arcs.
  const double art_cost = (max_cost + 1.0) * static_cast<double>(node_count_ + 1);
  tolerance_ = 1e-14 * std::max(1.0, max_cost) * static_cast<double>(node_count_);

  const std::size_t all_arcs = arc_count_ + node_count_;
  flow_.assign(all_arcs, 0.0);
  state_.assign(all_arcs, kLower);
  art_source_.resize(node_count_);
  art_target_.resize(node_count_);
  art_cost_.resize(node_count_);

  const std::size_t nodes_with_root = node_count_ + 1;
  pi_.assign(nodes_with_root, 0.0);
  parent_.assign(nodes_with_root, -1);
  pred_.assign(nodes_with_root, -1);
  thread_.assign(nodes_with_root, 0);
  rev_thread_.assign(nodes_with_root, 0);
  succ_num_.assign(nodes_with_root, 1);
  last_succ_.assign(nodes_with_root, 0);
  pred_dir_.assign(nodes_with_root, kUp);

  // Initial basis: every node hangs off the root through its artificial arc.
  parent_[root_] = -1;
  pred_[root_] = -1;
  thread_[root_] = 0;
  rev_thread_[0] = root_;
  succ_num_[root_] = static_cast<int>(nodes_with_root);
  last_succ_[root_] = root_ - 1;
  pi_[root_] = 0.0;

  for (std::size_t u = 0; u < node_count_; ++u) {
    const std::size_t e = arc_count_ + u;
    const int ui = static_cast<int>(u);
    parent_[u] = root_;
    pred_[u] = static_cast<int>(e);
    thread_[u] = ui + 1;
    rev_thread_[u + 1] = ui;
    succ_num_[u] = 1;
    last_succ_[u] = ui;
    state_[e] = kTree;
    if (u < m_) {
      pred_dir_[u] = kUp;
      pi_[u] = 0.0;
      art_source_[u] = ui;
      art_target_[u] = root_;
      flow_[e] = supply[u];
      art_cost_[u] = 0.0;
    } else {
      pred_dir_[u] = kDown;
      pi_[u] = art_cost;
      art_source_[u] = root_;
      art_target_[u] = ui;
      flow_[e] = demand[u - m_];
      art_cost_[u] = art_cost;
    }
  }

  block_size_ = std::max<std::size_t>(
      10, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(arc_count_)))));
}

bool TransportNetworkSimplex::find_entering_arc() {
  double best = -tolerance_;
  bool found = false;
  std::size_t count = block_size_;
  std::size_t e = next_arc_;
  // Walk the real arcs cyclically starting at next_arc_, one block at a time,
  // stopping at the end of the first block that contains an improving arc.
  std::size_t i = e / n_, j = e % n_;
  for (std::size_t visited = 0; visited < arc_count_; ++visited) {
    if (state_[e] == kLower) {
      const double c = cost_[e] + pi_[i] - pi_[m_ + j];
      if (c < best) {
        best = c;
        in_arc_ = e;
        found = true;
      }
    }
    ++e;
    if (++j == n_) {
      j = 0;
      if (++i == m_) {
        i = 0;
        e = 0;
      }
    }
    if (--count == 0) {
      if (found) break;
      count = block_size_;
    }
  }
  next_arc_ = e;
  return found;
}

void TransportNetworkSimplex::find_join_node() {
  int u = source_of(in_arc_);
  int v = target_of(in_arc_);
  while (u != v) {
    if (succ_num_[u] < succ_num_[v])
      u = parent_[u];
    else
      v = parent_[v];
  }
  join_ = u;
}

bool TransportNetworkSimplex::find_leaving_arc() {
  // Entering arcs are always at their lower bound (no capacities), so flow is
  // pushed from source to target of in_arc_ and around the tree path back.
  const int first = source_of(in_arc_);
  const int second = target_of(in_arc_);
  delta_ = std::numeric_limits<double>::infinity();
  int result = 0;

  // Path from first up to join: flow runs downward, so arcs pointing up lose flow.
  for (int u = first; u != join_; u = parent_[u]) {
    if (pred_dir_[u] == kUp) {
      const double d = flow_[pred_[u]];
      if (d < delta_) {
        delta_ = d;
        u_out_ = u;
        result = 1;
      }
    }
  }
  // Path from second up to join: flow runs upward, so arcs pointing down lose
  // flow. Ties prefer this side (last blocking arc in cycle order).
  for (int u = second; u != join_; u = parent_[u]) {
    if (pred_dir_[u] == kDown) {
      const double d = flow_[pred_[u]];
      if (d <= delta_) {
        delta_ = d;
        u_out_ = u;
        result = 2;
      }
    }
  }
  if (result == 1) {
    u_in_ = first;
    v_in_ = second;
  } else {
    u_in_ = second;
    v_in_ = first;
  }
  return result != 0;
}

void TransportNetworkSimplex::change_flow() {
  if (delta_ > 0.0) {
    flow_[in_arc_] += delta_;
    for (int u = source_of(in_arc_); u != join_; u = parent_[u]) flow_[pred_[u]] -= pred_dir_[u] * delta_;
    for (int u = target_of(in_arc_); u != join_; u = parent_[u]) flow_[pred_[u]] += pred_dir_[u] * delta_;
  }
  state_[in_arc_] = kTree;
  const auto out_arc = static_cast<std::size_t>(pred_[u_out_]);
  state_[out_arc] = kLower;
  flow_[out_arc] = 0.0;
}

void TransportNetworkSimplex::update_tree_structure() {
  const int old_rev_thread = rev_thread_[u_out_];
  const int old_succ_num = succ_num_[u_out_];
  const int old_last_succ = last_succ_[u_out_];
  v_out_ = parent_[u_out_];

  const auto in_dir = [&](int u) -> std::int8_t { return u == source_of(in_arc_) ? kUp : kDown; };

  if (u_in_ == u_out_) {
    // The entering arc directly replaces the leaving arc of u_in_.
    parent_[u_in_] = v_in_;
    pred_[u_in_] = static_cast<int>(in_arc_);
    pred_dir_[u_in_] = in_dir(u_in_);

    if (thread_[v_in_] != u_out_) {
      int after = thread_[old_last_succ];
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
      after = thread_[v_in_];
      thread_[v_in_] = u_out_;
      rev_thread_[u_out_] = v_in_;
      thread_[old_last_succ] = after;
      rev_thread_[after] = old_last_succ;
    }
  } else {
    // Re-hang the stem u_in_ -> ... -> u_out_ below v_in_, reversing it.
    const int thread_continue = old_rev_thread == v_in_ ? thread_[old_last_succ] : thread_[v_in_];

    int stem = u_in_;
    int par_stem = v_in_;
    int last = last_succ_[u_in_];
    int after = thread_[last];
    thread_[v_in_] = u_in_;
    dirty_revs_.clear();
    dirty_revs_.push_back(v_in_);
    while (stem != u_out_) {
      const int next_stem = parent_[stem];
      thread_[last] = next_stem;
      dirty_revs_.push_back(last);

      const int before = rev_thread_[stem];
      thread_[before] = after;
      rev_thread_[after] = before;

      parent_[stem] = par_stem;
      par_stem = stem;
      stem = next_stem;

      last = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem] : last_succ_[stem];
      after = thread_[last];
    }
    parent_[u_out_] = par_stem;
    thread_[last] = thread_continue;
    rev_thread_[thread_continue] = last;
    last_succ_[u_out_] = last;

    if (old_rev_thread != v_in_) {
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
    }

    for (int u : dirty_revs_) rev_thread_[thread_[u]] = u;

    int tmp_sc = 0;
    const int tmp_ls = last_succ_[u_out_];
    for (int u = u_out_, p = parent_[u]; u != u_in_; u = p, p = parent_[u]) {
      pred_[u] = pred_[p];
      pred_dir_[u] = static_cast<std::int8_t>(-pred_dir_[p]);
      tmp_sc += succ_num_[u] - succ_num_[p];
      succ_num_[u] = tmp_sc;
      last_succ_[p] = tmp_ls;
    }
    pred_[u_in_] = static_cast<int>(in_arc_);
    pred_dir_[u_in_] = in_dir(u_in_);
    succ_num_[u_in_] = old_succ_num;
  }

  const int up_limit_out = last_succ_[join_] == v_in_ ? join_ : -1;
  const int last_succ_out = last_succ_[u_out_];
  for (int u = v_in_; u != -1 && last_succ_[u] == v_in_; u = parent_[u]) last_succ_[u] = last_succ_out;

  if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
    for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u])
      last_succ_[u] = old_rev_thread;
  } else if (last_succ_out != old_last_succ) {
    for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u])
      last_succ_[u] = last_succ_out;
  }

  for (int u = v_in_; u != join_; u = parent_[u]) succ_num_[u] += old_succ_num;
  for (int u = v_out_; u != join_; u = parent_[u]) succ_num_[u] -= old_succ_num;
}

void TransportNetworkSimplex::update_potential() {
  const double sigma = pi_[v_in_] - pi_[u_in_] - pred_dir_[u_in_] * cost_of(in_arc_);
  const int end = thread_[last_succ_[u_in_]];
  for (int u = u_in_; u != end; u = thread_[u]) pi_[u] += sigma;
}

bool TransportNetworkSimplex::run(std::size_t max_iterations) {
  while (find_entering_arc()) {
    if (iterations_ >= max_iterations) return false;
    find_join_node();
    if (!find_leaving_arc()) throw Error("network simplex: unbounded pivot (internal error)");
    change_flow();
    update_tree_structure();
    update_potential();
    ++iterations_;
  }
  return true;
}

std::vector<std::size_t> TransportNetworkSimplex::basic_arcs() const {
  std::vector<std::size_t> out;
  out.reserve(node_count_);
  for (std::size_t u = 0; u < node_count_; ++u) {
    const auto e = static_cast<std::size_t>(pred_[u]);
    if (e < arc_count_) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double TransportNetworkSimplex::artificial_flow() const {
  double total = 0.0;
  for (std::size_t u = 0; u < node_count_; ++u) total += flow_[arc_count_ + u];
  return total;
}

bool TransportNetworkSimplex::tree_is_consistent() const {
  const int total = static_cast<int>(node_count_ + 1);
  // Thread must visit every node exactly once starting from the root.
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(total));
  int u = root_;
  for (int k = 0; k < total; ++k) {
    order.push_back(u);
    if (rev_thread_[thread_[u]] != u) return false;
    u = thread_[u];
  }
  if (u != root_) return false;
  std::vector<int> pos(static_cast<std::size_t>(total));
  for (int k = 0; k < total; ++k) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
  // Each subtree occupies a contiguous thread block ending at last_succ.
  for (int v = 0; v < total; ++v) {
    const int p = pos[static_cast<std::size_t>(v)];
    const int last = pos[static_cast<std::size_t>(last_succ_[v])];
    if (last - p + 1 != succ_num_[v]) return false;
    if (v != root_) {
      const int par = parent_[v];
      const int pp = pos[static_cast<std::size_t>(par)];
      const int plast = pos[static_cast<std::size_t>(last_succ_[par])];
      if (p <= pp || p > plast) return false;
      const auto e = static_cast<std::size_t>(pred_[v]);
      if (state_[e] != kTree) return false;
      const int s = source_of(e), t = target_of(e);
      if (pred_dir_[v] == kUp ? (s != v || t != par) : (s != par || t != v)) return false;
      // Tree arcs have zero reduced cost.
      if (std::abs(cost_of(e) + pi_[s] - pi_[t]) > 1e-9 * (1.0 + std::abs(pi_[s]) + std::abs(pi_[t])))
        return false;
    }
  }
  return true;
}

}  // namespace tetot::detail
