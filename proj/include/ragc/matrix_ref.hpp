#pragma once

#include "ragc/matrix.hpp"

// Serial reference kernels. The OpenMP kernels in matrix.hpp are checked
// against these in tests and compared in the benchmark target.
namespace ragc::reference {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix exp_elem(const DenseMatrix& a);
DenseMatrix minmax_normalize(const DenseMatrix& a);

}  // namespace ragc::reference
