#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tetot/report.hpp"

namespace tetot {

struct Candidate {
  std::string candidate_id;
  MetricReport metric;
  std::optional<double> accuracy;
};

struct CorrelationReport {
  double rho = 0.0;
  std::size_t n_points = 0;
  std::string metric_name;
  std::vector<std::pair<double, double>> pairs;  // (metric, accuracy)
};

enum class RankDirection { lower_is_better, higher_is_better };

/// Pearson correlation with population moments. Throws InputError on length
/// mismatch or fewer than two points, UndefinedError if either side is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Candidate ids sorted by metric value; ties by id. Front is the selection.
std::vector<std::string> rank_candidates(std::span<const Candidate> batch, RankDirection direction);

/// Pearson between metric values and accuracies; every candidate needs an accuracy.
CorrelationReport correlate_with_accuracy(std::span<const Candidate> batch,
                                          const std::string& metric_name);

/// Correlations over several groups (e.g. one group per target domain):
/// one rho per group, their mean, and a single rho over the pooled points.
struct GroupedCorrelation {
  std::vector<std::pair<std::string, CorrelationReport>> per_group;
  double mean_rho = 0.0;
  CorrelationReport pooled;
};

GroupedCorrelation correlate_grouped(
    std::span<const std::pair<std::string, std::vector<Candidate>>> groups,
    const std::string& metric_name);

/// Throws InputError if two candidates share an id.
void check_unique_ids(std::span<const Candidate> batch);

}  // namespace tetot
