#pragma once

#include "tetot/data_model.hpp"
#include "tetot/ot_solver.hpp"
#include "tetot/report.hpp"

namespace tetot {

/// n x K softmax rows; each row sums to one.
struct PseudoLabelMatrix {
  Matrix probs;
};

/// m x K rows with a single 1 each.
struct OneHotLabels {
  Matrix onehot;
};

/// Throws InputError unless every row of `set` is labeled.
OneHotLabels one_hot(const EmbeddingSet& set);

/// Row-wise max-subtracted softmax of `logits`.
Matrix softmax_rows(const Matrix& logits);

/// Euclidean distance between every source row and every target row.
CostMatrix feature_cost_matrix(const EmbeddingSet& source, const EmbeddingSet& target);

/// softmax(head(x)) for every target row, on features as given.
PseudoLabelMatrix pseudo_label(const ClassifierHead& head, const EmbeddingSet& target);

/// Euclidean distance between source one-hot rows and target probability rows.
CostMatrix label_cost_matrix(const OneHotLabels& source_labels, const PseudoLabelMatrix& target_probs);

/// feature + lambda * label, entrywise.
CostMatrix combine_costs(const CostMatrix& feature_cost, const CostMatrix& label_cost, double lambda);

/// TETOT: OT cost between the labeled source and the pseudo-labeled target
/// under the combined feature/label ground cost, with uniform marginals.
///
/// Both domains are subsampled (config.num_source / num_target, config.seed)
/// and normalized independently before the feature cost. Pseudo-labels use
/// the raw subsampled target features, since the head expects encoder-scale
/// inputs. With lambda == 0 the label term is skipped and the source may be
/// unlabeled.
MetricReport compute_tetot(const EmbeddingSet& source, const EmbeddingSet& target,
                           const ClassifierHead& head, const TetotConfig& config);

}  // namespace tetot
