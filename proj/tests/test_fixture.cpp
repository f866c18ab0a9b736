#include <gtest/gtest.h>

#include <vector>

#include "tetot/baselines.hpp"
#include "tetot/errors.hpp"
#include "tetot/fixture.hpp"

using namespace tetot;

namespace {

// Hand-rolled accuracy loop, independent of the library's argmax/logits path.
double loop_accuracy(const ClassifierHead& head, const EmbeddingSet& set) {
  const auto& w = head.weights();
  const auto& b = head.bias();
  const auto& x = set.features();
  int correct = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::Index best = 0;
    double best_logit = -1e300;
    for (Eigen::Index k = 0; k < w.rows(); ++k) {
      double logit = b(k);
      for (Eigen::Index d = 0; d < x.cols(); ++d) logit += w(k, d) * x(i, d);
      if (logit > best_logit) {
        best_logit = logit;
        best = k;
      }
    }
    if (best == (*set.labels())[static_cast<std::size_t>(i)]) ++correct;
  }
  return correct / static_cast<double>(x.rows());
}

}  // namespace

TEST(SyntheticFixture, ShapesAndLabels) {
  const std::vector<double> shifts{0.0, 1.0, 2.0};
  const auto fx = generate_synthetic_fixture(8, 4, shifts, 120, 3);
  EXPECT_EQ(fx.source.rows(), 120u);
  EXPECT_EQ(fx.source.dim(), 8u);
  EXPECT_TRUE(fx.source.fully_labeled());
  EXPECT_EQ(fx.head.num_classes(), 4u);
  ASSERT_EQ(fx.targets.size(), 3u);
  ASSERT_EQ(fx.true_accuracies.size(), 3u);
  for (const auto& t : fx.targets) EXPECT_TRUE(t.fully_labeled());
}

TEST(SyntheticFixture, RejectsBadArguments) {
  const std::vector<double> shifts{0.0};
  EXPECT_THROW(generate_synthetic_fixture(1, 3, shifts, 100, 0), InputError);
  EXPECT_THROW(generate_synthetic_fixture(4, 1, shifts, 100, 0), InputError);
  EXPECT_THROW(generate_synthetic_fixture(4, 3, shifts, 49, 0), InputError);
  const std::vector<double> negative{-1.0};
  EXPECT_THROW(generate_synthetic_fixture(4, 3, negative, 100, 0), InputError);
}

TEST(SyntheticFixture, DeterministicForSeed) {
  const std::vector<double> shifts{0.0, 1.5};
  const auto a = generate_synthetic_fixture(6, 3, shifts, 80, 42);
  const auto b = generate_synthetic_fixture(6, 3, shifts, 80, 42);
  EXPECT_EQ(a.source.features(), b.source.features());
  EXPECT_EQ(a.targets[1].features(), b.targets[1].features());
  EXPECT_EQ(a.head.weights(), b.head.weights());
  EXPECT_EQ(a.true_accuracies, b.true_accuracies);
  const auto c = generate_synthetic_fixture(6, 3, shifts, 80, 43);
  EXPECT_NE(a.source.features(), c.source.features());
}

TEST(SyntheticFixture, AccuraciesAreRecomputable) {
  const std::vector<double> shifts{0.0, 1.0, 2.0, 3.0};
  const auto fx = generate_synthetic_fixture(10, 5, shifts, 300, 9);
  for (std::size_t t = 0; t < shifts.size(); ++t) {
    EXPECT_EQ(fx.true_accuracies[t], transferability_ground_truth(fx.head, fx.targets[t]).value);
    EXPECT_EQ(fx.true_accuracies[t], loop_accuracy(fx.head, fx.targets[t]));
  }
}

TEST(SyntheticFixture, ZeroShiftMatchesSourceAccuracy) {
  const std::vector<double> shifts{0.0};
  double gap = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto fx = generate_synthetic_fixture(8, 4, shifts, 1000, seed);
    gap += fx.true_accuracies[0] - transferability_ground_truth(fx.head, fx.source).value;
  }
  EXPECT_LT(std::abs(gap / 10.0), 0.02);
}

TEST(SyntheticFixture, AccuracyDecreasesWithShiftOnAverage) {
  const std::vector<double> shifts{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> mean(shifts.size(), 0.0);
  constexpr int kSeeds = 8;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const auto fx = generate_synthetic_fixture(16, 5, shifts, 400, static_cast<std::uint64_t>(seed));
    for (std::size_t t = 0; t < shifts.size(); ++t) mean[t] += fx.true_accuracies[t] / kSeeds;
  }
  for (std::size_t t = 1; t < shifts.size(); ++t) EXPECT_LE(mean[t], mean[t - 1] + 0.01) << "shift " << shifts[t];
  EXPECT_LT(mean.back(), mean.front() - 0.2);
}
