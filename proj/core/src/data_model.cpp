#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tetot/data_model.hpp"
#include "tetot/errors.hpp"

namespace tetot {

EmbeddingSet::EmbeddingSet(Matrix features, std::optional<std::vector<std::int64_t>> labels,
                           std::size_t num_classes, std::string domain_id)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      domain_id_(std::move(domain_id)) {
  if (features_.rows() < 1 || features_.cols() < 1) throw InputError("embedding set must be non-empty");
  if (!features_.allFinite()) throw InputError("embedding set contains non-finite features");
  if (labels_) {
    if (labels_->size() != rows())
      throw InputError("label count " + std::to_string(labels_->size()) + " does not match " +
                       std::to_string(rows()) + " rows");
    if (num_classes_ == 0) throw InputError("labeled set needs num_classes >= 1");
    for (auto l : *labels_) {
      if (l == kUnlabeled) continue;
      if (l < 0 || static_cast<std::size_t>(l) >= num_classes_)
        throw InputError("label " + std::to_string(l) + " outside [0, " + std::to_string(num_classes_) + ")");
    }
  }
}

bool EmbeddingSet::fully_labeled() const {
  return labels_ && std::none_of(labels_->begin(), labels_->end(), [](auto l) { return l == kUnlabeled; });
}

EmbeddingSet EmbeddingSet::with_features(Matrix features) const {
  if (features.rows() != features_.rows())
    throw InputError("replacement features change the sample count");
  return EmbeddingSet(std::move(features), labels_, num_classes_, domain_id_);
}

EmbeddingSet EmbeddingSet::select_rows(const std::vector<std::size_t>& indices) const {
  Matrix out(static_cast<Eigen::Index>(indices.size()), features_.cols());
  std::optional<std::vector<std::int64_t>> labels;
  if (labels_) labels.emplace().reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= rows()) throw InputError("row index out of range");
    out.row(static_cast<Eigen::Index>(r)) = features_.row(static_cast<Eigen::Index>(indices[r]));
    if (labels_) labels->push_back((*labels_)[indices[r]]);
  }
  return EmbeddingSet(std::move(out), std::move(labels), num_classes_, domain_id_);
}

ClassifierHead::ClassifierHead(Matrix weights, Vector bias) : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.rows() < 2) throw InputError("classifier head needs at least 2 classes");
  if (weights_.cols() < 1) throw InputError("classifier head needs dim >= 1");
  if (bias_.size() != weights_.rows()) throw InputError("bias length does not match class count");
  if (!weights_.allFinite() || !bias_.allFinite()) throw InputError("classifier head contains non-finite values");
}

Matrix ClassifierHead::logits(const Matrix& features) const {
  if (features.cols() != weights_.cols())
    throw InputError("head expects dim " + std::to_string(dim()) + ", features have dim " +
                     std::to_string(features.cols()));
  Matrix out = features * weights_.transpose();
  out.rowwise() += bias_.transpose();
  return out;
}

std::size_t argmax(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  std::size_t best = 0;
  for (Eigen::Index c = 1; c < row.size(); ++c)
    if (row(c) > row(static_cast<Eigen::Index>(best))) best = static_cast<std::size_t>(c);
  return best;
}

std::string_view to_string(NormalizationMode mode) {
  switch (mode) {
    case NormalizationMode::none: return "none";
    case NormalizationMode::l2_per_sample: return "l2_per_sample";
    case NormalizationMode::zscore_per_domain: return "zscore_per_domain";
  }
  return "?";
}

std::string_view to_string(SolverKind solver) {
  return solver == SolverKind::exact ? "exact" : "sinkhorn";
}

NormalizationMode parse_normalization_mode(std::string_view text) {
  if (text == "none") return NormalizationMode::none;
  if (text == "l2" || text == "l2_per_sample") return NormalizationMode::l2_per_sample;
  if (text == "zscore" || text == "zscore_per_domain") return NormalizationMode::zscore_per_domain;
  throw InputError("unknown normalization mode '" + std::string(text) + "'");
}

SolverKind parse_solver_kind(std::string_view text) {
  if (text == "exact") return SolverKind::exact;
  if (text == "sinkhorn") return SolverKind::sinkhorn;
  throw InputError("unknown solver '" + std::string(text) + "'");
}

void TetotConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be finite and >= 0");
  if (num_source && *num_source == 0) throw InputError("num_source must be >= 1");
  if (num_target && *num_target == 0) throw InputError("num_target must be >= 1");
  if (sinkhorn_epsilon && !(*sinkhorn_epsilon > 0.0)) throw InputError("sinkhorn epsilon must be > 0");
  if (!(sinkhorn_tol > 0.0)) throw InputError("sinkhorn tolerance must be > 0");
  if (!(cov_jitter >= 0.0)) throw InputError("covariance jitter must be >= 0");
}

EmbeddingSet subsample(const EmbeddingSet& set, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw InputError("subsample size must be >= 1");
  const std::size_t n = set.rows();
  if (k > n) {
    warn("requested " + std::to_string(k) + " samples from '" + set.domain_id() + "' which has only " +
         std::to_string(n) + "; using all");
    k = n;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first k slots are a uniform k-subset in random order.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return set.select_rows(idx);
}

EmbeddingSet normalize_features(const EmbeddingSet& set, NormalizationMode mode) {
  if (mode == NormalizationMode::none) return set;
  Matrix f = set.features();
  if (mode == NormalizationMode::l2_per_sample) {
    std::size_t zero_rows = 0;
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
      const double norm = f.row(i).norm();
      if (norm > 0.0)
        f.row(i) /= norm;
      else
        ++zero_rows;
    }
    if (zero_rows > 0)
      warn(std::to_string(zero_rows) + " zero-norm row(s) in '" + set.domain_id() + "' left unnormalized");
  } else {
    const double n = static_cast<double>(f.rows());
    std::size_t flat = 0;
    for (Eigen::Index j = 0; j < f.cols(); ++j) {
      auto col = f.col(j);
      const double mean = col.sum() / n;
      col.array() -= mean;
      const double sd = std::sqrt(col.squaredNorm() / n);
      if (sd > 0.0)
        col /= sd;
      else
        ++flat;
    }
    if (flat > 0)
      warn(std::to_string(flat) + " zero-variance column(s) in '" + set.domain_id() + "' only centered");
  }
  return set.with_features(std::move(f));
}

}  // namespace tetot
