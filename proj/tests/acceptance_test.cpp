// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "tetot/baselines.hpp"
#include "tetot/evaluation.hpp"
#include "tetot/fixture.hpp"
#include "tetot/gaussian_approx.hpp"
#include "tetot/ot_solver.hpp"
#include "tetot/tetot_metric.hpp"

using namespace tetot;
using tetot::testing::gaussian_matrix;
using tetot::testing::random_matrix;
using tetot::testing::random_simplex;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

class Runner {
 public:
  void check(const std::string& name, double time_limit_s, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0 && secs >= time_limit_s) {
      v.pass = false;
      v.detail += fmt("; exceeded %.0f s limit", time_limit_s);
    }
    std::printf("%s  %-28s %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
    failures_ += v.pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

// ---- synthetic study shared by the correlation, selection and stability criteria

constexpr std::size_t kStudyDim = 16;
constexpr std::size_t kStudyClasses = 5;
constexpr std::size_t kStudySamples = 500;
constexpr int kStudySeeds = 5;

struct SeedStudy {
  std::vector<double> accuracy, tetot, entropy;
  SyntheticFixture fixture;
};

std::vector<double> study_shifts() {
  std::vector<double> s;
  for (int i = 0; i < 10; ++i) s.push_back(0.5 * i);
  return s;
}

const std::vector<SeedStudy>& study() {
  static const std::vector<SeedStudy> runs = [] {
    std::vector<SeedStudy> out;
    const auto shifts = study_shifts();
    for (int seed = 0; seed < kStudySeeds; ++seed) {
      SeedStudy s{{}, {}, {}, generate_synthetic_fixture(kStudyDim, kStudyClasses, shifts, kStudySamples, static_cast<std::uint64_t>(seed))};
      s.accuracy = s.fixture.true_accuracies;
      for (const auto& t : s.fixture.targets) {
        s.tetot.push_back(compute_tetot(s.fixture.source, t, s.fixture.head, TetotConfig{}).value);
        s.entropy.push_back(prediction_entropy(s.fixture.head, t).value);
      }
      out.push_back(std::move(s));
    }
    return out;
  }();
  return runs;
}

// ---- criteria -----------------------------------------------------------------

Verdict oracle_equivalence() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + trial % 5);
    Matrix c = random_matrix(rng, n, n);
    // Every fourth instance uses small integers so ties and degenerate bases occur.
    if (trial % 4 == 3) c = (c * 4.0).array().floor().matrix();
    const CostMatrix cost(c);
    const double got = solve_exact(cost, Weights::uniform(static_cast<std::size_t>(n)), Weights::uniform(static_cast<std::size_t>(n))).cost;
    worst = std::max(worst, std::abs(got - brute_force_oracle(cost)));
  }
  return {worst <= 1e-9, fmt("200 instances, max |exact - oracle| = %.2e (tol 1e-9)", worst)};
}

Verdict certificates() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> size(1, 50);
  double worst_feas = 0.0, worst_gap = 0.0;
  bool feasible_plans = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = size(rng), n = size(rng);
    const CostMatrix cost(random_matrix(rng, m, n, 0.0, 10.0));
    const Weights a(random_simplex(rng, static_cast<std::size_t>(m)));
    const Weights b(random_simplex(rng, static_cast<std::size_t>(n)));
    const auto r = solve_exact(cost, a, b);
    if (!r.duals) return {false, "solver returned no duals"};
    feasible_plans = feasible_plans && verify_plan(r.plan, a, b, 1e-9);
    double dual = 0.0;
    for (int i = 0; i < m; ++i) dual += a[static_cast<std::size_t>(i)] * r.duals->u(i);
    for (int j = 0; j < n; ++j) dual += b[static_cast<std::size_t>(j)] * r.duals->v(j);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        worst_feas = std::max(worst_feas, r.duals->u(i) + r.duals->v(j) - cost(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    worst_gap = std::max(worst_gap, std::abs(r.cost - dual) / std::max(1.0, std::abs(r.cost)));
  }
  return {worst_feas <= 1e-7 && worst_gap < 1e-7 && feasible_plans,
          fmt("100 instances, max dual violation %.2e, max relative gap %.2e, plans feasible: %s", worst_feas,
              worst_gap, feasible_plans ? "yes" : "no")};
}

Verdict sinkhorn_convergence() {
  const std::vector<double> eps{1.0, 1e-1, 1e-2, 1e-3};
  std::mt19937_64 rng(11);
  bool monotone = true;
  double worst_final = 0.0;
  int unconverged = 0;
  tetot::testing::WarningCapture quiet;
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = static_cast<Eigen::Index>(8 + trial % 5), n = static_cast<Eigen::Index>(6 + trial % 7);
    const CostMatrix cost(random_matrix(rng, m, n));
    const auto a = Weights::uniform(static_cast<std::size_t>(m));
    const auto b = Weights::uniform(static_cast<std::size_t>(n));
    const double exact = solve_exact(cost, a, b).cost;
    double prev = INFINITY;
    for (double e : eps) {
      SinkhornOptions opt;
      opt.epsilon = e;
      const auto r = solve_sinkhorn(cost, a, b, opt);
      unconverged += r.converged ? 0 : 1;
      const double gap = r.cost - exact;
      if (gap > prev + 1e-12 || gap < -1e-12) monotone = false;
      prev = gap;
    }
    worst_final = std::max(worst_final, prev / exact);
  }
  return {monotone && worst_final < 1e-2,
          fmt("20 instances, gaps non-increasing: %s, max relative gap at eps=1e-3: %.2e (tol 1e-2), "
              "runs at iteration cap: %d",
              monotone ? "yes" : "no", worst_final, unconverged)};
}

Verdict gaussian_vs_empirical() {
  Vector mu_s(2), mu_t(2);
  mu_s << 0.0, 0.0;
  mu_t << 2.0, 1.0;
  Matrix cov_s(2, 2), cov_t(2, 2);
  cov_s << 1.0, 0.3, 0.3, 0.5;
  cov_t << 2.0, -0.5, -0.5, 1.0;
  // 2x2 oracle independent of the eigensolver: for M = S^1/2 T S^1/2,
  // tr sqrt(M) = sqrt(tr M + 2 sqrt(det M)), tr M = tr(S T), det M = det S det T.
  const double tr_sqrt = std::sqrt((cov_s * cov_t).trace() + 2.0 * std::sqrt(cov_s.determinant() * cov_t.determinant()));
  const double analytic = (mu_s - mu_t).squaredNorm() + cov_s.trace() + cov_t.trace() - 2.0 * tr_sqrt;
  const double closed_form = w2_squared({mu_s, cov_s, 2000}, {mu_t, cov_t, 2000});
  if (std::abs(closed_form - analytic) > 1e-9) return {false, fmt("w2_squared %.12f disagrees with 2x2 oracle %.12f", closed_form, analytic)};
  const Matrix ls = cov_s.llt().matrixL(), lt = cov_t.llt().matrixL();

  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    Matrix xs = gaussian_matrix(rng, 2000, 2) * ls.transpose();
    Matrix xt = gaussian_matrix(rng, 2000, 2) * lt.transpose();
    xs.rowwise() += mu_s.transpose();
    xt.rowwise() += mu_t.transpose();
    Matrix c(2000, 2000);
    for (Eigen::Index i = 0; i < 2000; ++i) c.row(i) = (xt.rowwise() - xs.row(i)).rowwise().squaredNorm().transpose();
    total += solve_exact(CostMatrix(std::move(c)), Weights::uniform(2000), Weights::uniform(2000)).cost;
  }
  const double mean = total / 5.0;
  const double rel = std::abs(mean - analytic) / analytic;
  return {rel <= 0.1, fmt("analytic W2^2 = %.4f, mean empirical OT = %.4f, relative error %.3f (tol 0.1)", analytic,
                          mean, rel)};
}

Verdict w2_specializations() {
  Vector m0(1), m3(1);
  m0 << 0.0;
  m3 << 3.0;
  const double one_d = w2_squared({m0, Matrix::Constant(1, 1, 1.0), 2}, {m3, Matrix::Constant(1, 1, 4.0), 2});
  double worst = std::abs(one_d - 10.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = 1 + trial % 8;
    Vector s(d), t(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      s(i) = u(rng);
      t(i) = u(rng);
    }
    const Vector ms = gaussian_matrix(rng, d, 1).col(0), mt = gaussian_matrix(rng, d, 1).col(0);
    double expected = (ms - mt).squaredNorm();
    for (Eigen::Index i = 0; i < d; ++i) expected += std::pow(std::sqrt(s(i)) - std::sqrt(t(i)), 2);
    const double got = w2_squared({ms, s.asDiagonal(), 2}, {mt, t.asDiagonal(), 2});
    worst = std::max(worst, std::abs(got - expected));
  }
  return {worst <= 1e-9, fmt("1-D case = %.12f (expected 10), max error over 1-D and 20 diagonal cases %.2e (tol 1e-9)",
                             one_d, worst)};
}

Verdict tetot_reductions() {
  const std::vector<double> lambdas{0.0, 1.0, 100.0, 10000.0};
  bool reduction = true, monotone = true;
  double worst_self = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const auto m = static_cast<Eigen::Index>(10 + seed % 7), n = static_cast<Eigen::Index>(12 + seed % 5);
    const Eigen::Index d = 6, k = 3;
    std::vector<std::int64_t> labels(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<std::int64_t>(i % k);
    const EmbeddingSet src(gaussian_matrix(rng, m, d), labels, k);
    const EmbeddingSet tgt(gaussian_matrix(rng, n, d));
    const ClassifierHead head(gaussian_matrix(rng, k, d), gaussian_matrix(rng, k, 1).col(0));

    std::vector<double> values;
    for (double lambda : lambdas) {
      TetotConfig c;
      c.lambda = lambda;
      values.push_back(compute_tetot(src, tgt, head, c).value);
    }
    const auto cf = feature_cost_matrix(normalize_features(src, NormalizationMode::l2_per_sample),
                                        normalize_features(tgt, NormalizationMode::l2_per_sample));
    reduction = reduction && values[0] == solve_exact(cf, Weights::uniform(src.rows()), Weights::uniform(tgt.rows())).cost;
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] < values[i - 1] - 1e-12 * std::max(1.0, values[i - 1])) monotone = false;

    TetotConfig self;
    self.lambda = 0.0;
    worst_self = std::max(worst_self, std::abs(compute_tetot(src, src, head, self).value));
  }
  return {reduction && monotone && worst_self <= 1e-9,
          fmt("20 instances, lambda=0 equals feature-only OT: %s, non-decreasing over {0,1,100,10000}: %s, "
              "max self-distance %.2e",
              reduction ? "yes" : "no", monotone ? "yes" : "no", worst_self)};
}

Verdict entropy_bounds() {
  std::mt19937_64 rng(9);
  double worst_uniform = 0.0, worst_onehot = 0.0;
  bool bounded = true;
  for (std::size_t k = 2; k <= 12; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    const EmbeddingSet target(gaussian_matrix(rng, 50, 4));
    const double uniform = prediction_entropy(ClassifierHead(Matrix::Zero(ki, 4), Vector::Zero(ki)), target).value;
    worst_uniform = std::max(worst_uniform, std::abs(uniform - std::log(static_cast<double>(k))));

    Vector bias = Vector::Zero(ki);
    bias(static_cast<Eigen::Index>(k / 2)) = 1e4;
    worst_onehot = std::max(worst_onehot, prediction_entropy(ClassifierHead(Matrix::Zero(ki, 4), bias), target).value);

    for (int trial = 0; trial < 10; ++trial) {
      const double scale = std::pow(10.0, trial % 5 - 2);
      const ClassifierHead head(scale * gaussian_matrix(rng, ki, 4), gaussian_matrix(rng, ki, 1).col(0));
      const double h = prediction_entropy(head, target).value;
      bounded = bounded && h >= 0.0 && h <= std::log(static_cast<double>(k));
    }
  }
  return {worst_uniform <= 1e-12 && worst_onehot == 0.0 && bounded,
          fmt("K=2..12: max |H - ln K| = %.2e (tol 1e-12), one-hot H = %.1e, 110 random heads in [0, ln K]: %s",
              worst_uniform, worst_onehot, bounded ? "yes" : "no")};
}

Verdict correlation_study() {
  int beats = 0;
  bool all_strong = true;
  std::string rhos;
  for (const auto& s : study()) {
    const double rt = pearson(s.tetot, s.accuracy);
    const double re = pearson(s.entropy, s.accuracy);
    all_strong = all_strong && rt <= -0.8;
    beats += std::abs(rt) >= std::abs(re) ? 1 : 0;
    rhos += fmt(" %.3f/%.3f", rt, re);
  }
  return {all_strong && beats >= 4,
          fmt("rho tetot/entropy per seed:%s; all tetot rho <= -0.8: %s; tetot |rho| >= entropy |rho| on %d/5",
              rhos.c_str(), all_strong ? "yes" : "no", beats)};
}

Verdict selection() {
  int good = 0;
  std::string gaps;
  for (const auto& s : study()) {
    std::vector<Candidate> batch;
    for (std::size_t i = 0; i < s.tetot.size(); ++i)
      batch.push_back({"target_" + std::to_string(i), {"tetot", s.tetot[i], {}}, s.accuracy[i]});
    const std::string pick = rank_candidates(batch, RankDirection::lower_is_better).front();
    const auto chosen = std::find_if(batch.begin(), batch.end(), [&](const Candidate& c) { return c.candidate_id == pick; });
    const double best = *std::max_element(s.accuracy.begin(), s.accuracy.end());
    const double gap = best - *chosen->accuracy;
    good += gap <= 0.02 ? 1 : 0;
    gaps += fmt(" %.3f", gap);
  }
  return {good >= 4, fmt("accuracy gap of selected candidate per seed:%s; within 0.02 on %d/5", gaps.c_str(), good)};
}

Verdict timing() {
  std::mt19937_64 rng(3);
  const CostMatrix cost(random_matrix(rng, 2000, 2000));
  auto t0 = std::chrono::steady_clock::now();
  solve_exact(cost, Weights::uniform(2000), Weights::uniform(2000));
  const double ot_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::vector<double> shift{2.0};
  const auto fx = generate_synthetic_fixture(128, 10, shift, 2000, 3);
  t0 = std::chrono::steady_clock::now();
  compute_tetot(fx.source, fx.targets[0], fx.head, TetotConfig{});
  const double tetot_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ot_s < 10.0 && tetot_s < 20.0,
          fmt("exact OT 2000x2000: %.2f s (limit 10), compute_tetot 2000x2000 dim 128: %.2f s (limit 20)", ot_s, tetot_s)};
}

Verdict sample_size_stability() {
  double worst = 0.0;
  for (int seed = 0; seed < kStudySeeds; ++seed) {
    const auto& s = study()[static_cast<std::size_t>(seed)];
    const double full = pearson(s.tetot, s.accuracy);
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
      TetotConfig c;
      c.num_source = static_cast<std::size_t>(frac * kStudySamples);
      c.num_target = c.num_source;
      c.seed = static_cast<std::uint64_t>(seed);
      std::vector<double> values;
      for (const auto& t : s.fixture.targets) values.push_back(compute_tetot(s.fixture.source, t, s.fixture.head, c).value);
      worst = std::max(worst, std::abs(pearson(values, s.accuracy) - full));
    }
  }
  return {worst <= 0.1, fmt("max |rho(fraction) - rho(full)| over 25/50/75/100%% and 5 seeds = %.3f (tol 0.1)", worst)};
}

}  // namespace

int main() {
  Runner run;
  run.check("ot_oracle_equivalence", 10, oracle_equivalence);
  run.check("ot_certificates", 30, certificates);
  run.check("sinkhorn_convergence", 0, sinkhorn_convergence);
  run.check("gaussian_vs_empirical_ot", 120, gaussian_vs_empirical);
  run.check("w2_specializations", 0, w2_specializations);
  run.check("tetot_reductions_monotonicity", 0, tetot_reductions);
  run.check("entropy_bounds", 0, entropy_bounds);
  run.check("synthetic_correlation_study", 300, correlation_study);
  run.check("selection_soundness", 0, selection);
  run.check("timing", 0, timing);
  run.check("sample_size_stability", 0, sample_size_stability);
  std::printf("%s: %d failing criteria\n", run.failures() == 0 ? "ALL PASS" : "FAILURES", run.failures());
  return run.failures() == 0 ? 0 : 1;
}
