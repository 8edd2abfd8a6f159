#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gz {

using Complex = std::complex<double>;
using Vertex = std::int32_t;

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
template <class Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar>;
using SparseMatrixC = SparseMatrix<Complex>;

/// Integer power with 0^0 = 1; the recursions rely on that convention at u = 1.
template <class Scalar>
Scalar ipow(Scalar base, int exponent) {
  Scalar result(1);
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace gz
