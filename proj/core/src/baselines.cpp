#include <cmath>

#include "tetot/baselines.hpp"
#include "tetot/errors.hpp"
#include "tetot/tetot_metric.hpp"

namespace tetot {

MetricReport prediction_entropy(const ClassifierHead& head, const EmbeddingSet& target) {
  const Matrix probs = softmax_rows(head.logits(target.features()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    double h = 0.0;
    for (Eigen::Index c = 0; c < probs.cols(); ++c) {
      const double p = probs(i, c);
      if (p > 0.0) h -= p * std::log(p);
    }
    total += h;
  }
  MetricReport report;
  report.metric_name = "entropy";
  report.value = total / static_cast<double>(probs.rows());
  report.meta["num_target"] = static_cast<std::int64_t>(target.rows());
  report.meta["num_classes"] = static_cast<std::int64_t>(head.num_classes());
  return report;
}

MetricReport transferability_ground_truth(const ClassifierHead& head, const EmbeddingSet& labeled) {
  if (!labeled.fully_labeled()) throw InputError("accuracy requires a fully labeled set");
  const Matrix logits = head.logits(labeled.features());
  const auto& labels = *labeled.labels();
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i)
    if (static_cast<std::int64_t>(argmax(logits.row(i))) == labels[static_cast<std::size_t>(i)]) ++correct;
  MetricReport report;
  report.metric_name = "accuracy";
  report.value = static_cast<double>(correct) / static_cast<double>(logits.rows());
  report.meta["num_samples"] = static_cast<std::int64_t>(logits.rows());
  report.meta["num_correct"] = static_cast<std::int64_t>(correct);
  return report;
}

}  // namespace tetot
