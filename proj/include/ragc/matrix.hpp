#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ragc {

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateRowError : std::runtime_error {
  DegenerateRowError(std::size_t row, const std::string& msg)
      : std::runtime_error(msg), row(row) {}
  std::size_t row;
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Row-major dense matrix of doubles; the universal numeric carrier.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool same_shape(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  std::string shape_str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// OpenMP-parallel kernels. Serial reference versions live in matrix_ref.hpp.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);  // a * b^T
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);  // a^T * b
DenseMatrix transpose(const DenseMatrix& a);

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double c);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix exp_elem(const DenseMatrix& a);
DenseMatrix log_elem(const DenseMatrix& a);
DenseMatrix pow_elem(const DenseMatrix& a, double p);
DenseMatrix negate(const DenseMatrix& a);
DenseMatrix mean_of_two(const DenseMatrix& a, const DenseMatrix& b);

/// Global min-max rescale to [0,1]; a constant matrix maps to all zeros.
DenseMatrix minmax_normalize(const DenseMatrix& a);

/// Unit L2 rows; a row with norm below epsilon_norm raises DegenerateRowError.
inline constexpr double kEpsilonNorm = 1e-12;
DenseMatrix row_l2_normalize(const DenseMatrix& a);

std::vector<double> row_norms(const DenseMatrix& a);
DenseMatrix row_sums(const DenseMatrix& a);   // N x 1
DenseMatrix diag_vec(const DenseMatrix& a);   // N x 1 from square matrix
double sum_all(const DenseMatrix& a);

void check_finite(const DenseMatrix& a, const char* what);

}  // namespace ragc
