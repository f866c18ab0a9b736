#include <chrono>
#include <cmath>
#include <string>

#include "tetot/errors.hpp"
#include "tetot/parallel.hpp"
#include "tetot/tetot_metric.hpp"

namespace tetot {
namespace {

// Rows per block below which threading costs more than it saves.
constexpr std::size_t kMinRowsPerBlock = 64;

// Pairwise Euclidean distances between the rows of a and b, filled in
// disjoint row blocks.
Matrix pairwise_distances(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.rows());
  parallel_blocks(static_cast<std::size_t>(a.rows()), kMinRowsPerBlock, [&](std::size_t lo, std::size_t hi) {
    for (auto i = static_cast<Eigen::Index>(lo); i < static_cast<Eigen::Index>(hi); ++i)
      out.row(i) = (b.rowwise() - a.row(i)).rowwise().norm().transpose();
  });
  return out;
}

constexpr std::uint64_t kTargetSeedSalt = 0x9E3779B97F4A7C15ull;

}  // namespace

OneHotLabels one_hot(const EmbeddingSet& set) {
  if (!set.fully_labeled()) throw InputError("label cost requires source labels");
  const auto& labels = *set.labels();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(set.rows()), static_cast<Eigen::Index>(set.num_classes()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(labels[i])) = 1.0;
  return {std::move(out)};
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix p(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double hi = logits.row(i).maxCoeff();
    // std::exp underflows to exactly 0; Eigen's vectorized exp clamps instead.
    double sum = 0.0;
    for (Eigen::Index c = 0; c < logits.cols(); ++c) sum += (p(i, c) = std::exp(logits(i, c) - hi));
    p.row(i) /= sum;
  }
  return p;
}

CostMatrix feature_cost_matrix(const EmbeddingSet& source, const EmbeddingSet& target) {
  if (source.dim() != target.dim())
    throw InputError("feature dims differ: source " + std::to_string(source.dim()) + ", target " +
                     std::to_string(target.dim()));
  return CostMatrix(pairwise_distances(source.features(), target.features()));
}

PseudoLabelMatrix pseudo_label(const ClassifierHead& head, const EmbeddingSet& target) {
  return {softmax_rows(head.logits(target.features()))};
}

CostMatrix label_cost_matrix(const OneHotLabels& source_labels, const PseudoLabelMatrix& target_probs) {
  if (source_labels.onehot.cols() != target_probs.probs.cols())
    throw InputError("class counts differ: source labels have " + std::to_string(source_labels.onehot.cols()) +
                     " classes, pseudo-labels " + std::to_string(target_probs.probs.cols()));
  return CostMatrix(pairwise_distances(source_labels.onehot, target_probs.probs));
}

CostMatrix combine_costs(const CostMatrix& feature_cost, const CostMatrix& label_cost, double lambda) {
  if (feature_cost.rows() != label_cost.rows() || feature_cost.cols() != label_cost.cols())
    throw InputError("feature and label cost matrices have different shapes");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be finite and >= 0");
  if (lambda == 0.0) return feature_cost;
  return CostMatrix(feature_cost.entries() + lambda * label_cost.entries());
}

MetricReport compute_tetot(const EmbeddingSet& source, const EmbeddingSet& target, const ClassifierHead& head,
                           const TetotConfig& config) {
  config.validate();
  if (source.dim() != target.dim())
    throw InputError("feature dims differ: source " + std::to_string(source.dim()) + ", target " +
                     std::to_string(target.dim()));
  const bool use_labels = config.lambda > 0.0;
  if (use_labels) {
    if (!source.fully_labeled()) throw InputError("label cost requires source labels");
    if (head.dim() != target.dim()) throw InputError("head dim does not match the embeddings");
    if (source.num_classes() != head.num_classes())
      throw InputError("source has " + std::to_string(source.num_classes()) + " classes, head has " +
                       std::to_string(head.num_classes()));
  }

  const EmbeddingSet src = config.num_source ? subsample(source, *config.num_source, config.seed) : source;
  const EmbeddingSet tgt =
      config.num_target ? subsample(target, *config.num_target, config.seed ^ kTargetSeedSalt) : target;

  CostMatrix cost = feature_cost_matrix(normalize_features(src, config.norm_mode),
                                        normalize_features(tgt, config.norm_mode));
  if (use_labels) {
    PseudoLabelMatrix probs = pseudo_label(head, tgt);
    if (config.hard_pseudo_labels) {
      Matrix hard = Matrix::Zero(probs.probs.rows(), probs.probs.cols());
      for (Eigen::Index j = 0; j < hard.rows(); ++j)
        hard(j, static_cast<Eigen::Index>(argmax(probs.probs.row(j)))) = 1.0;
      probs.probs = std::move(hard);
    }
    cost = combine_costs(cost, label_cost_matrix(one_hot(src), probs), config.lambda);
  }

  const auto a = Weights::uniform(src.rows());
  const auto b = Weights::uniform(tgt.rows());
  OtResult ot;
  if (config.solver == SolverKind::exact) {
    ot = solve_exact(cost, a, b);
  } else {
    SinkhornOptions opts;
    opts.epsilon = config.sinkhorn_epsilon.value_or(0.0);
    opts.max_iter = config.sinkhorn_max_iter;
    opts.tol = config.sinkhorn_tol;
    ot = solve_sinkhorn(cost, a, b, opts);
  }

  MetricReport report;
  report.metric_name = "tetot";
  report.value = ot.cost;
  report.meta["num_source"] = static_cast<std::int64_t>(src.rows());
  report.meta["num_target"] = static_cast<std::int64_t>(tgt.rows());
  report.meta["lambda"] = config.lambda;
  report.meta["norm_mode"] = std::string(to_string(config.norm_mode));
  report.meta["solver"] = std::string(to_string(config.solver));
  report.meta["seed"] = static_cast<std::int64_t>(config.seed);
  report.meta["iterations"] = static_cast<std::int64_t>(ot.iterations);
  if (config.solver == SolverKind::sinkhorn) report.meta["converged"] = ot.converged;
  if (config.hard_pseudo_labels) report.meta["hard_pseudo_labels"] = true;
  return report;
}

}  // namespace tetot
