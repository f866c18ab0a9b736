#pragma once

#include <Eigen/Core>

namespace tetot {

// Row-major so that a sample (or a cost-matrix row) is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace tetot
