#pragma once

#include <Eigen/Dense>

namespace maxent {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Sample matrices keep one observation per contiguous row.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

}  // namespace maxent
