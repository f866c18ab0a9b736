#include <cmath>
#include <string>

#include "binary_io.hpp"
#include "tetot/errors.hpp"
#include "tetot/gaussian_approx.hpp"

namespace tetot {
namespace {

constexpr std::string_view kStaMagic = "TETOTSTA";
constexpr std::uint32_t kVersion = 1;

double trace_sqrt(const Matrix& m) {
  const SymmetricEigen eig = jacobi_eigen(m);
  const double floor = -1e-8 * std::max(1.0, m.norm());
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double l = eig.values(i);
    if (l < floor) throw NotPsdError("matrix has eigenvalue " + std::to_string(l) + " < 0");
    if (l > 0.0) s += std::sqrt(l);
  }
  return s;
}

void check_stats(const GaussianStats& s, const char* which) {
  const auto d = s.mean.size();
  if (d == 0 || s.cov.rows() != d || s.cov.cols() != d)
    throw InputError(std::string(which) + " statistics have inconsistent dimensions");
  if (!s.mean.allFinite() || !s.cov.allFinite())
    throw InputError(std::string(which) + " statistics contain non-finite values");
}

}  // namespace

GaussianStats gaussian_stats(const EmbeddingSet& set) {
  if (set.rows() < 2) throw InputError("gaussian statistics need at least 2 samples");
  const Matrix& x = set.features();
  const double n = static_cast<double>(x.rows());
  GaussianStats s;
  s.mean = x.colwise().sum().transpose() / n;
  const Matrix centered = x.rowwise() - s.mean.transpose();
  Matrix cov = centered.transpose() * centered / n;
  s.cov = 0.5 * (cov + cov.transpose());
  s.count = set.rows();
  return s;
}

double w2_squared(const GaussianStats& source, const GaussianStats& target) {
  check_stats(source, "source");
  check_stats(target, "target");
  if (source.mean.size() != target.mean.size())
    throw InputError("gaussian dims differ: " + std::to_string(source.mean.size()) + " vs " +
                     std::to_string(target.mean.size()));

  const Matrix root_s = sym_psd_sqrt(source.cov);
  Matrix cross = root_s * target.cov * root_s;
  cross = 0.5 * (cross + cross.transpose());

  const double mean_term = (source.mean - target.mean).squaredNorm();
  const double cov_term = source.cov.trace() + target.cov.trace() - 2.0 * trace_sqrt(cross);
  const double value = mean_term + cov_term;
  const double scale = 1.0 + mean_term + source.cov.trace() + target.cov.trace();
  if (value < -1e-8 * scale) throw NotPsdError("negative squared Wasserstein distance " + std::to_string(value));
  return value > 0.0 ? value : 0.0;
}

MetricReport compute_tetot_approx(const GaussianStats& source_stats, const EmbeddingSet& target,
                                  const TetotConfig& config) {
  config.validate();
  check_stats(source_stats, "source");
  if (static_cast<std::size_t>(source_stats.mean.size()) != target.dim())
    throw InputError("source statistics have dim " + std::to_string(source_stats.mean.size()) +
                     ", target has dim " + std::to_string(target.dim()));

  const EmbeddingSet tgt = config.num_target ? subsample(target, *config.num_target, config.seed) : target;
  GaussianStats src = source_stats;
  GaussianStats tst = gaussian_stats(tgt);
  if (config.cov_jitter > 0.0) {
    src.cov.diagonal().array() += config.cov_jitter;
    tst.cov.diagonal().array() += config.cov_jitter;
  }

  MetricReport report;
  report.metric_name = "tetot_approx";
  report.value = w2_squared(src, tst);
  report.meta["source_count"] = static_cast<std::int64_t>(source_stats.count);
  report.meta["num_target"] = static_cast<std::int64_t>(tgt.rows());
  report.meta["seed"] = static_cast<std::int64_t>(config.seed);
  report.meta["cov_jitter"] = config.cov_jitter;
  return report;
}

void save_gaussian_stats(const GaussianStats& stats, const std::filesystem::path& path) {
  check_stats(stats, "gaussian");
  detail::BinaryWriter w(path);
  w.magic(kStaMagic);
  w.u32(kVersion);
  w.u64(static_cast<std::uint64_t>(stats.mean.size()));
  w.u64(stats.count);
  for (Eigen::Index i = 0; i < stats.mean.size(); ++i) w.f64(stats.mean(i));
  for (Eigen::Index i = 0; i < stats.cov.rows(); ++i)
    for (Eigen::Index j = 0; j < stats.cov.cols(); ++j) w.f64(stats.cov(i, j));
  w.close();
}

GaussianStats load_gaussian_stats(const std::filesystem::path& path) {
  detail::BinaryReader r(path);
  r.magic(kStaMagic);
  r.version(kVersion);
  const std::uint64_t dim = r.u64();
  const std::uint64_t count = r.u64();
  if (dim == 0 || dim > (std::uint64_t{1} << 16)) throw FormatError(r.where() + ": implausible dim");
  GaussianStats s;
  s.count = count;
  s.mean.resize(static_cast<Eigen::Index>(dim));
  s.cov.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < s.mean.size(); ++i) s.mean(i) = r.f64();
  for (Eigen::Index i = 0; i < s.cov.rows(); ++i)
    for (Eigen::Index j = 0; j < s.cov.cols(); ++j) s.cov(i, j) = r.f64();
  r.expect_end();
  if (!s.mean.allFinite() || !s.cov.allFinite()) throw DataError("non-finite value in " + path.string());
  if (count < 2) throw DataError(path.string() + ": statistics need count >= 2");
  if ((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, s.cov.norm()))
    throw DataError(path.string() + ": covariance is not symmetric");
  return s;
}

}  // namespace tetot
