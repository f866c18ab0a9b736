#pragma once

#include <cstddef>
#include <filesystem>

#include "tetot/data_model.hpp"
#include "tetot/report.hpp"
#include "tetot/types.hpp"

namespace tetot {

/// Mean and (divide-by-n) covariance of one domain's features.
struct GaussianStats {
  Vector mean;
  Matrix cov;
  std::size_t count = 0;
};

struct SymmetricEigen {
  Vector values;   // unsorted
  Matrix vectors;  // columns are eigenvectors
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition. Stops once the off-diagonal Frobenius
/// norm falls below 1e-12 * ||M||_F. Throws InputError if M is not square or
/// asymmetric by more than 1e-9.
SymmetricEigen jacobi_eigen(const Matrix& m);

/// Principal square root of a symmetric PSD matrix. Eigenvalues in
/// [-1e-8, 0) are clamped to zero; anything lower raises NotPsdError.
Matrix sym_psd_sqrt(const Matrix& m);

/// Requires at least two rows.
GaussianStats gaussian_stats(const EmbeddingSet& set);

/// Closed-form squared 2-Wasserstein distance between two Gaussians:
///   |mu_s - mu_t|^2 + tr(S + T - 2 (S^1/2 T S^1/2)^1/2)
double w2_squared(const GaussianStats& source, const GaussianStats& target);

/// TETOT-approx from shipped source statistics and raw target features.
/// No feature normalization; labels play no role.
MetricReport compute_tetot_approx(const GaussianStats& source_stats, const EmbeddingSet& target,
                                  const TetotConfig& config);

// STA1 binary format.
void save_gaussian_stats(const GaussianStats& stats, const std::filesystem::path& path);
GaussianStats load_gaussian_stats(const std::filesystem::path& path);

}  // namespace tetot
