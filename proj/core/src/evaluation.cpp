#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "tetot/errors.hpp"
#include "tetot/evaluation.hpp"

namespace tetot {

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InputError("pearson: series lengths differ");
  if (xs.size() < 2) throw InputError("pearson: need at least 2 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedError("pearson: correlation with a constant series is undefined");
  const double rho = (sxy / n) / (std::sqrt(sxx / n) * std::sqrt(syy / n));
  return std::clamp(rho, -1.0, 1.0);
}

void check_unique_ids(std::span<const Candidate> batch) {
  std::set<std::string_view> seen;
  for (const auto& c : batch)
    if (!seen.insert(c.candidate_id).second) throw InputError("duplicate candidate id '" + c.candidate_id + "'");
}

std::vector<std::string> rank_candidates(std::span<const Candidate> batch, RankDirection direction) {
  if (batch.empty()) throw InputError("cannot rank an empty batch");
  check_unique_ids(batch);
  std::vector<const Candidate*> order;
  order.reserve(batch.size());
  for (const auto& c : batch) order.push_back(&c);
  std::sort(order.begin(), order.end(), [direction](const Candidate* l, const Candidate* r) {
    if (l->metric.value != r->metric.value)
      return direction == RankDirection::lower_is_better ? l->metric.value < r->metric.value
                                                         : l->metric.value > r->metric.value;
    return l->candidate_id < r->candidate_id;
  });
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (const auto* c : order) ids.push_back(c->candidate_id);
  return ids;
}

CorrelationReport correlate_with_accuracy(std::span<const Candidate> batch, const std::string& metric_name) {
  check_unique_ids(batch);
  CorrelationReport report;
  report.metric_name = metric_name;
  std::vector<double> xs, ys;
  for (const auto& c : batch) {
    if (!c.accuracy) throw InputError("candidate '" + c.candidate_id + "' has no accuracy");
    xs.push_back(c.metric.value);
    ys.push_back(*c.accuracy);
    report.pairs.emplace_back(c.metric.value, *c.accuracy);
  }
  report.rho = pearson(xs, ys);
  report.n_points = xs.size();
  return report;
}

GroupedCorrelation correlate_grouped(std::span<const std::pair<std::string, std::vector<Candidate>>> groups,
                                     const std::string& metric_name) {
  if (groups.empty()) throw InputError("no groups to correlate");
  GroupedCorrelation out;
  std::vector<Candidate> pooled;
  double sum = 0.0;
  for (const auto& [name, batch] : groups) {
    out.per_group.emplace_back(name, correlate_with_accuracy(batch, metric_name));
    sum += out.per_group.back().second.rho;
    for (const auto& c : batch) {
      Candidate copy = c;
      copy.candidate_id = name + "/" + c.candidate_id;
      pooled.push_back(std::move(copy));
    }
  }
  out.mean_rho = sum / static_cast<double>(groups.size());
  out.pooled = correlate_with_accuracy(pooled, metric_name);
  return out;
}

}  // namespace tetot
