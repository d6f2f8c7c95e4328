#include "ragc/matrix_ref.hpp"

#include <cmath>

namespace ragc::reference {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("reference matmul: inner dimensions differ, " + a.shape_str() + " * " +
                     b.shape_str());
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = 0; p < a.cols(); ++p)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, p) * b(p, j);
  return out;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols())
    throw ShapeError("reference matmul_nt: inner dimensions differ");
  DenseMatrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t p = 0; p < a.cols(); ++p) acc += a(i, p) * b(j, p);
      out(i, j) = acc;
    }
  return out;
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  if (!a.same_shape(b)) throw ShapeError("reference hadamard: shape mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] * b.data()[i];
  return out;
}

DenseMatrix exp_elem(const DenseMatrix& a) {
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = std::exp(a.data()[i]);
  return out;
}

DenseMatrix minmax_normalize(const DenseMatrix& a) {
  if (a.empty()) throw ShapeError("reference minmax_normalize: empty matrix");
  double lo = a.data()[0], hi = a.data()[0];
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a.data()[i] < lo) lo = a.data()[i];
    if (a.data()[i] > hi) hi = a.data()[i];
  }
  DenseMatrix out(a.rows(), a.cols());
  if (hi == lo) return out;
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = (a.data()[i] - lo) / (hi - lo);
  return out;
}

}  // namespace ragc::reference
