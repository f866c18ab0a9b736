#include <cmath>
#include <random>
#include <string>

#include "tetot/errors.hpp"
#include "tetot/fixture.hpp"

namespace tetot {
namespace {

constexpr double kClusterRadius = 3.0;
constexpr double kSpreadGrowth = 0.1;

Vector random_unit(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(dim));
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gauss(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

EmbeddingSet sample_domain(const Matrix& means, const Vector& offset, double spread, std::size_t n,
                           std::mt19937_64& rng, std::string id) {
  const auto k = static_cast<std::size_t>(means.rows());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix x(static_cast<Eigen::Index>(n), means.cols());
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = static_cast<Eigen::Index>(i % k);
    labels[i] = y;
    for (Eigen::Index d = 0; d < x.cols(); ++d) x(static_cast<Eigen::Index>(i), d) = means(y, d) + offset(d) + spread * gauss(rng);
  }
  return EmbeddingSet(std::move(x), std::move(labels), k, std::move(id));
}

double head_accuracy(const ClassifierHead& head, const EmbeddingSet& set) {
  const Matrix logits = head.logits(set.features());
  const auto& labels = *set.labels();
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i)
    if (static_cast<std::int64_t>(argmax(logits.row(i))) == labels[static_cast<std::size_t>(i)]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(logits.rows());
}

}  // namespace

SyntheticFixture generate_synthetic_fixture(std::size_t dim, std::size_t num_classes,
                                            std::span<const double> shift_levels, std::size_t n_per_domain,
                                            std::uint64_t seed) {
  if (dim < 2) throw InputError("fixture dim must be >= 2");
  if (num_classes < 2) throw InputError("fixture needs at least 2 classes");
  if (n_per_domain < 50) throw InputError("fixture needs at least 50 samples per domain");
  for (double s : shift_levels)
    if (!std::isfinite(s) || s < 0.0) throw InputError("shift levels must be finite and >= 0");

  std::mt19937_64 rng(seed);
  const auto d = static_cast<Eigen::Index>(dim);
  const auto k = static_cast<Eigen::Index>(num_classes);

  Matrix means(k, d);
  for (Eigen::Index c = 0; c < k; ++c) means.row(c) = kClusterRadius * random_unit(dim, rng).transpose();
  const Vector direction = random_unit(dim, rng);

  // Nearest-mean rule for unit-variance isotropic clusters with equal priors.
  Vector bias(k);
  for (Eigen::Index c = 0; c < k; ++c) bias(c) = -0.5 * means.row(c).squaredNorm();
  ClassifierHead head(means, bias);

  EmbeddingSet source = sample_domain(means, Vector::Zero(d), 1.0, n_per_domain, rng, "source");

  std::vector<EmbeddingSet> targets;
  std::vector<double> accuracies;
  for (std::size_t t = 0; t < shift_levels.size(); ++t) {
    const double s = shift_levels[t];
    targets.push_back(sample_domain(means, s * direction, 1.0 + kSpreadGrowth * s, n_per_domain, rng,
                                    "target_" + std::to_string(t)));
    accuracies.push_back(head_accuracy(head, targets.back()));
  }
  return {std::move(source), std::move(targets), std::move(head), std::move(accuracies)};
}

}  // namespace tetot
