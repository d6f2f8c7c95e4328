#include "ragc/matrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ragc {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw ShapeError("data length " + std::to_string(data_.size()) +
                     " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string DenseMatrix::shape_str() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_;
  return os.str();
}

namespace {
void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (!a.same_shape(b))
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
}
}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: inner dimensions differ, " + a.shape_str() + " * " + b.shape_str());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  DenseMatrix out(n, m);
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    double* row = po + i * m;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = pa[i * k + p];
      if (av == 0.0) continue;
      const double* brow = pb + p * m;
      for (std::size_t j = 0; j < m; ++j) row[j] += av * brow[j];
    }
  }
  return out;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols())
    throw ShapeError("matmul_nt: inner dimensions differ, " + a.shape_str() + " * " +
                     b.shape_str() + "^T");
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  DenseMatrix out(n, m);
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const double* arow = pa + i * k;
    for (std::size_t j = 0; j < m; ++j) {
      const double* brow = pb + j * k;
      double acc = 0.0;
      for (std::size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
      po[i * m + j] = acc;
    }
  }
  return out;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows())
    throw ShapeError("matmul_tn: inner dimensions differ, " + a.shape_str() + "^T * " +
                     b.shape_str());
  const std::size_t n = a.cols(), k = a.rows(), m = b.cols();
  DenseMatrix out(n, m);
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double av = pa[p * n + i];
      if (av == 0.0) continue;
      const double* brow = pb + p * m;
      double* row = po + i * m;
      for (std::size_t j = 0; j < m; ++j) row[j] += av * brow[j];
    }
  }
  return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "add");
  DenseMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "subtract");
  DenseMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

DenseMatrix scale(const DenseMatrix& a, double c) {
  DenseMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = a.data()[i] * c;
  return out;
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "hadamard");
  DenseMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = a.data()[i] * b.data()[i];
  return out;
}

DenseMatrix exp_elem(const DenseMatrix& a) {
  DenseMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = std::exp(a.data()[i]);
  return out;
}

DenseMatrix log_elem(const DenseMatrix& a) {
  DenseMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = std::log(a.data()[i]);
  return out;
}

DenseMatrix pow_elem(const DenseMatrix& a, double p) {
  DenseMatrix out(a.rows(), a.cols());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = std::pow(a.data()[i], p);
  return out;
}

DenseMatrix negate(const DenseMatrix& a) { return scale(a, -1.0); }

DenseMatrix mean_of_two(const DenseMatrix& a, const DenseMatrix& b) {
  return scale(add(a, b), 0.5);
}

DenseMatrix minmax_normalize(const DenseMatrix& a) {
  if (a.empty()) throw ShapeError("minmax_normalize: empty matrix");
  double lo = a.data()[0], hi = a.data()[0];
  for (std::size_t i = 1; i < a.size(); ++i) {
    lo = std::min(lo, a.data()[i]);
    hi = std::max(hi, a.data()[i]);
  }
  DenseMatrix out(a.rows(), a.cols());
  if (hi == lo) return out;  // constant input maps to all zeros
  const double range = hi - lo;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out.data()[i] = (a.data()[i] - lo) / range;
  return out;
}

std::vector<double> row_norms(const DenseMatrix& a) {
  std::vector<double> norms(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    norms[i] = std::sqrt(s);
  }
  return norms;
}

DenseMatrix row_l2_normalize(const DenseMatrix& a) {
  DenseMatrix out(a.rows(), a.cols());
  const auto norms = row_norms(a);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (norms[i] < kEpsilonNorm)
      throw DegenerateRowError(i, "row_l2_normalize: row " + std::to_string(i) +
                                      " has near-zero norm");
    const double inv = 1.0 / norms[i];
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * inv;
  }
  return out;
}

DenseMatrix row_sums(const DenseMatrix& a) {
  DenseMatrix out(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j);
    out(i, 0) = s;
  }
  return out;
}

DenseMatrix diag_vec(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("diag_vec: matrix not square, " + a.shape_str());
  DenseMatrix out(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, 0) = a(i, i);
  return out;
}

double sum_all(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i];
  return s;
}

void check_finite(const DenseMatrix& a, const char* what) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(a.data()[i]))
      throw NumericError(std::string(what) + ": non-finite entry at flat index " +
                         std::to_string(i));
}

}  // namespace ragc
