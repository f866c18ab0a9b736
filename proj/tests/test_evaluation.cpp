#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "tetot/errors.hpp"
#include "tetot/evaluation.hpp"

using namespace tetot;

namespace {

Candidate cand(std::string id, double value, std::optional<double> accuracy = std::nullopt) {
  Candidate c;
  c.candidate_id = std::move(id);
  c.metric.metric_name = "tetot";
  c.metric.value = value;
  c.accuracy = accuracy;
  return c;
}

}  // namespace

TEST(Pearson, KnownValues) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 3);
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  EXPECT_NEAR(pearson(x, neg), -1.0, 1e-15);
  EXPECT_NEAR(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
}

TEST(Pearson, Errors) {
  const std::vector<double> x{1, 2, 3};
  EXPECT_THROW(pearson(x, std::vector<double>{4, 4, 4}), UndefinedError);
  EXPECT_THROW(pearson(std::vector<double>{4, 4, 4}, x), UndefinedError);
  EXPECT_THROW(pearson(x, std::vector<double>{1, 2}), InputError);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), InputError);
}

TEST(Pearson, AffineEquivarianceAndRange) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(20), y(20);
    for (std::size_t i = 0; i < 20; ++i) {
      x[i] = g(rng);
      y[i] = 0.5 * x[i] + g(rng);
    }
    const double rho = pearson(x, y);
    EXPECT_LE(std::abs(rho), 1.0 + 1e-12);
    for (double a : {-3.0, -0.1, 0.25, 7.0}) {
      std::vector<double> ax(20);
      for (std::size_t i = 0; i < 20; ++i) ax[i] = a * x[i] + 1.5;
      EXPECT_NEAR(pearson(ax, y), (a > 0 ? 1.0 : -1.0) * rho, 1e-12);
    }
  }
}

TEST(Pearson, IndependentSeriesAreWeaklyCorrelated) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u;
  int large = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(100), y(100);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    if (std::abs(pearson(x, y)) >= 0.3) ++large;
  }
  // |rho| >= 0.3 at n = 100 has probability about 0.002 under independence.
  EXPECT_LE(large, 2);
}

TEST(Rank, Examples) {
  const std::vector<Candidate> batch{cand("a", 0.3), cand("b", 0.1), cand("c", 0.2)};
  EXPECT_EQ(rank_candidates(batch, RankDirection::lower_is_better), (std::vector<std::string>{"b", "c", "a"}));
  EXPECT_EQ(rank_candidates(batch, RankDirection::higher_is_better), (std::vector<std::string>{"a", "c", "b"}));

  EXPECT_EQ(rank_candidates(std::vector<Candidate>{cand("only", 5)}, RankDirection::lower_is_better),
            (std::vector<std::string>{"only"}));

  const std::vector<Candidate> tied{cand("zeta", 1.0), cand("alpha", 1.0)};
  EXPECT_EQ(rank_candidates(tied, RankDirection::lower_is_better), (std::vector<std::string>{"alpha", "zeta"}));
  EXPECT_EQ(rank_candidates(tied, RankDirection::higher_is_better), (std::vector<std::string>{"alpha", "zeta"}));
}

TEST(Rank, Errors) {
  EXPECT_THROW(rank_candidates(std::vector<Candidate>{}, RankDirection::lower_is_better), InputError);
  EXPECT_THROW(rank_candidates(std::vector<Candidate>{cand("a", 1), cand("a", 2)}, RankDirection::lower_is_better),
               InputError);
}

TEST(Rank, InvariantUnderIncreasingTransformAndSelectsMinimum) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Candidate> batch, squared;
    for (int i = 0; i < 12; ++i) {
      // Coarse values so ties occur.
      const double v = std::round(u(rng) * 4.0) / 4.0;
      batch.push_back(cand("m" + std::to_string(i), v));
      squared.push_back(cand("m" + std::to_string(i), v * v));
    }
    const auto order = rank_candidates(batch, RankDirection::lower_is_better);
    EXPECT_EQ(rank_candidates(squared, RankDirection::lower_is_better), order);
    const double best = std::min_element(batch.begin(), batch.end(), [](const Candidate& l, const Candidate& r) {
                          return l.metric.value < r.metric.value;
                        })->metric.value;
    const auto front = std::find_if(batch.begin(), batch.end(), [&](const Candidate& c) { return c.candidate_id == order.front(); });
    EXPECT_EQ(front->metric.value, best);
  }
}

TEST(Correlate, AffineAntiRelation) {
  std::vector<Candidate> batch;
  for (int i = 0; i < 6; ++i) {
    const double acc = 0.4 + 0.1 * i;
    batch.push_back(cand("c" + std::to_string(i), 1.0 - acc, acc));
  }
  const auto r = correlate_with_accuracy(batch, "tetot");
  EXPECT_NEAR(r.rho, -1.0, 1e-12);
  EXPECT_EQ(r.n_points, 6u);
  EXPECT_EQ(r.metric_name, "tetot");
  ASSERT_EQ(r.pairs.size(), 6u);
  EXPECT_EQ(r.pairs[2].first, batch[2].metric.value);
  EXPECT_EQ(r.pairs[2].second, *batch[2].accuracy);
}

TEST(Correlate, Errors) {
  EXPECT_THROW(correlate_with_accuracy(std::vector<Candidate>{cand("a", 1, 0.5), cand("b", 2)}, "tetot"), InputError);
  EXPECT_THROW(correlate_with_accuracy(std::vector<Candidate>{cand("a", 1, 0.5), cand("b", 2, 0.5)}, "tetot"),
               UndefinedError);
  EXPECT_THROW(correlate_with_accuracy(std::vector<Candidate>{cand("a", 1, 0.5)}, "tetot"), InputError);
}

TEST(Correlate, GroupedReportsMeanAndPooled) {
  std::vector<std::pair<std::string, std::vector<Candidate>>> groups;
  groups.push_back({"d1", {cand("x", 1, 0.9), cand("y", 2, 0.8), cand("z", 3, 0.7)}});
  groups.push_back({"d2", {cand("x", 1, 0.1), cand("y", 2, 0.3), cand("z", 3, 0.2)}});
  const auto g = correlate_grouped(groups, "tetot");
  ASSERT_EQ(g.per_group.size(), 2u);
  EXPECT_NEAR(g.per_group[0].second.rho, -1.0, 1e-12);
  EXPECT_NEAR(g.per_group[1].second.rho, 0.5, 1e-12);
  EXPECT_NEAR(g.mean_rho, -0.25, 1e-12);
  EXPECT_EQ(g.pooled.n_points, 6u);
  const std::vector<double> xs{1, 2, 3, 1, 2, 3}, ys{0.9, 0.8, 0.7, 0.1, 0.3, 0.2};
  EXPECT_NEAR(g.pooled.rho, pearson(xs, ys), 1e-15);
}
