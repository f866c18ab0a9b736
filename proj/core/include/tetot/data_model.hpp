#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tetot/types.hpp"

namespace tetot {

inline constexpr std::int64_t kUnlabeled = -1;

/// Empirical sample of one domain: encoder outputs plus optional class ids.
///
/// Labels, when present, hold one entry per row, each in [0, num_classes) or
/// kUnlabeled. num_classes is 0 only for sets that carry no labels at all.
class EmbeddingSet {
 public:
  EmbeddingSet(Matrix features, std::optional<std::vector<std::int64_t>> labels = std::nullopt,
               std::size_t num_classes = 0, std::string domain_id = {});

  const Matrix& features() const { return features_; }
  std::size_t rows() const { return static_cast<std::size_t>(features_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(features_.cols()); }

  bool has_labels() const { return labels_.has_value(); }
  // True when labels are attached and no row carries kUnlabeled.
  bool fully_labeled() const;
  const std::optional<std::vector<std::int64_t>>& labels() const { return labels_; }
  std::size_t num_classes() const { return num_classes_; }
  const std::string& domain_id() const { return domain_id_; }

  EmbeddingSet with_features(Matrix features) const;
  EmbeddingSet select_rows(const std::vector<std::size_t>& indices) const;

 private:
  Matrix features_;
  std::optional<std::vector<std::int64_t>> labels_;
  std::size_t num_classes_;
  std::string domain_id_;
};

/// Linear classifier head: logits = weights * x + bias.
class ClassifierHead {
 public:
  ClassifierHead(Matrix weights, Vector bias);

  const Matrix& weights() const { return weights_; }
  const Vector& bias() const { return bias_; }
  std::size_t num_classes() const { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(weights_.cols()); }

  /// rows x K logits for every sample of `features`. Throws InputError on dim mismatch.
  Matrix logits(const Matrix& features) const;

 private:
  Matrix weights_;
  Vector bias_;
};

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(const Eigen::Ref<const Eigen::RowVectorXd>& row);

enum class NormalizationMode { none, l2_per_sample, zscore_per_domain };
enum class SolverKind { exact, sinkhorn };

std::string_view to_string(NormalizationMode mode);
std::string_view to_string(SolverKind solver);
/// Accepts "none", "l2", "l2_per_sample", "zscore", "zscore_per_domain".
NormalizationMode parse_normalization_mode(std::string_view text);
SolverKind parse_solver_kind(std::string_view text);

struct TetotConfig {
  double lambda = 1.0;
  NormalizationMode norm_mode = NormalizationMode::l2_per_sample;
  std::optional<std::size_t> num_source;  // nullopt: all samples
  std::optional<std::size_t> num_target;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::exact;

  // Sinkhorn only. epsilon unset means 0.01 * mean(C).
  std::optional<double> sinkhorn_epsilon;
  std::size_t sinkhorn_max_iter = 10000;
  double sinkhorn_tol = 1e-9;

  // Ablation: replace target softmax rows with one-hot argmax rows.
  bool hard_pseudo_labels = false;
  // Added to both covariances as jitter * I in the Gaussian variant.
  double cov_jitter = 0.0;

  /// Throws InputError if lambda < 0, explicit counts are 0, or jitter < 0.
  void validate() const;
};

// ---- file formats -------------------------------------------------------

/// Reads EMB1 (by magic) or CSV. A ".lbl" sidecar with the same stem is attached.
EmbeddingSet load_embedding_set(const std::filesystem::path& path);
/// Writes EMB1 and, when labels are present, the ".lbl" sidecar.
void save_embedding_set(const EmbeddingSet& set, const std::filesystem::path& path);

ClassifierHead load_classifier_head(const std::filesystem::path& path);
void save_classifier_head(const ClassifierHead& head, const std::filesystem::path& path);

/// Sidecar path for an embedding file: same stem, ".lbl" extension.
std::filesystem::path label_sidecar_path(const std::filesystem::path& embedding_path);

// ---- sampling and normalization -----------------------------------------

/// min(k, rows) rows drawn uniformly without replacement; deterministic in seed.
/// Labels follow the same indices. k > rows warns and returns a permutation of all rows.
EmbeddingSet subsample(const EmbeddingSet& set, std::size_t k, std::uint64_t seed);

/// Normalizes using statistics of `set` alone.
EmbeddingSet normalize_features(const EmbeddingSet& set, NormalizationMode mode);

}  // namespace tetot
