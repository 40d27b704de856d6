#ifndef OPPQ_LINALG_HPP
#define OPPQ_LINALG_HPP

#include <cstddef>
#include <vector>

#include "oppq/precision.hpp"

namespace oppq {

// Dense row-major matrix of BigReal.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, BigReal(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  BigReal& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigReal& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  BigReal max_abs() const;

 private:
  std::size_t rows_, cols_;
  std::vector<BigReal> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

// Determinant as sign and natural log of magnitude. sign == 0 marks a
// matrix that is numerically singular at the working precision; the
// log_magnitude is then meaningless.
struct SignLogDet {
  int sign = 0;
  BigReal log_magnitude = BigReal(0);
};

// Row-pivoted elimination with per-row max-norm scaling. A pivot whose
// magnitude falls below 10^(-decimal_digits+10) relative to its row's max
// entry yields sign = 0.
SignLogDet det_sign_log(const Matrix& m, const PrecisionContext& ctx);

// Kernel vector of a numerically singular square matrix, normalized so the
// largest-magnitude component equals 1. Throws NoKernelError if every pivot
// stays above the singularity threshold, and PrecisionError if the residual
// |m*v|_inf / |m|_inf exceeds 10^(-decimal_digits/2).
std::vector<BigReal> null_vector(const Matrix& m, const PrecisionContext& ctx);

}  // namespace oppq

#endif
