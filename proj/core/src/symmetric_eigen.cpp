// Cyclic Jacobi eigendecomposition for small dense symmetric matrices.

#include <cmath>
#include <string>

#include "tetot/errors.hpp"
#include "tetot/gaussian_approx.hpp"

namespace tetot {
namespace {

constexpr std::size_t kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InputError("eigendecomposition needs a non-empty square matrix");
  if (!m.allFinite()) throw InputError("matrix contains non-finite entries");
  const double norm = m.norm();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, norm))
    throw InputError("matrix is not symmetric");

  const Eigen::Index n = m.rows();
  Matrix a = 0.5 * (m + m.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double threshold = 1e-12 * norm;

  std::size_t sweep = 0;
  while (sweep < kMaxSweeps && off_diagonal_norm(a) > threshold) {
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that zeroes a(p,q); take the smaller root for stability.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_diagonal_norm(a) > threshold)
    warn("jacobi eigendecomposition stopped after " + std::to_string(kMaxSweeps) + " sweeps");
  return {a.diagonal(), std::move(v), sweep};
}

Matrix sym_psd_sqrt(const Matrix& m) {
  const SymmetricEigen eig = jacobi_eigen(m);
  const double floor = -1e-8 * std::max(1.0, m.norm());
  Vector roots(eig.values.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double l = eig.values(i);
    if (l < floor) throw NotPsdError("matrix has eigenvalue " + std::to_string(l) + " < 0");
    roots(i) = l > 0.0 ? std::sqrt(l) : 0.0;
  }
  Matrix s = eig.vectors * roots.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (s + s.transpose());
}

}  // namespace tetot
