#pragma once

#include "tetot/data_model.hpp"
#include "tetot/report.hpp"

namespace tetot {

/// Mean Shannon entropy (natural log) of the head's softmax over the target rows.
MetricReport prediction_entropy(const ClassifierHead& head, const EmbeddingSet& target);

/// Fraction of rows whose argmax logit equals the label (ties: lowest index).
/// Requires every row to be labeled.
MetricReport transferability_ground_truth(const ClassifierHead& head, const EmbeddingSet& labeled);

}  // namespace tetot
