#include "oppq/linalg.hpp"

#include <utility>

namespace oppq {

BigReal Matrix::max_abs() const {
  BigReal m(0);
  for (const auto& v : data_)
    if (abs(v) > m) m = abs(v);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigReal& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

namespace {

int sgn(const BigReal& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Scale every row by its max-norm; returns the accumulated log of the
// scale factors, or nullopt when some row is identically zero.
std::optional<BigReal> scale_rows(Matrix& a) {
  BigReal log_scale(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigReal rmax(0);
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (abs(a(i, j)) > rmax) rmax = abs(a(i, j));
    if (rmax == 0) return std::nullopt;
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) /= rmax;
    log_scale += log(rmax);
  }
  return log_scale;
}

}  // namespace

SignLogDet det_sign_log(const Matrix& m, const PrecisionContext& ctx) {
  if (!m.square()) throw DimensionError("det_sign_log: matrix not square");
  ctx.activate();
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) require_finite(m(i, j), "det_sign_log");
  if (n == 0) return {1, BigReal(0)};

  Matrix a = m;
  auto log_scale = scale_rows(a);
  if (!log_scale) return {0, BigReal(0)};

  const BigReal pivot_tol = ctx.eps(10);
  int sign = 1;
  BigReal logdet = *log_scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (abs(a(r, k)) > abs(a(piv, k))) piv = r;
    BigReal row_max(0);
    for (std::size_t j = k; j < n; ++j)
      if (abs(a(piv, j)) > row_max) row_max = abs(a(piv, j));
    if (row_max == 0 || abs(a(piv, k)) < pivot_tol * row_max)
      return {0, BigReal(0)};
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    sign *= sgn(a(k, k));
    logdet += log(abs(a(k, k)));
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal f = a(r, k) / a(k, k);
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a(r, j) -= f * a(k, j);
    }
  }
  return {sign, logdet};
}

std::vector<BigReal> null_vector(const Matrix& m, const PrecisionContext& ctx) {
  if (!m.square()) throw DimensionError("null_vector: matrix not square");
  ctx.activate();
  const std::size_t n = m.rows();
  if (n == 0) throw DimensionError("null_vector: empty matrix");

  const BigReal mat_max = m.max_abs();
  if (mat_max == 0) {
    std::vector<BigReal> v(n, BigReal(0));
    v[0] = 1;
    return v;
  }

  Matrix a = m;
  // Uniform scaling only. Per-row scaling would blow a nearly zero row up
  // to unit size and hide exactly the rank deficiency being extracted.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) /= mat_max;

  // Rank cutoff is deliberately loose; the residual check at the end is
  // what actually validates the kernel.
  const BigReal pivot_tol =
      pow(BigReal(10), -BigReal(ctx.decimal_digits()) / 2 - 5);
  std::vector<std::size_t> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = j;

  // Full pivoting so the free variable sits behind the smallest pivot.
  std::size_t rank = n;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t c = k; c < n; ++c)
        if (abs(a(r, c)) > abs(a(pr, pc))) {
          pr = r;
          pc = c;
        }
    if (abs(a(pr, pc)) < pivot_tol) {
      rank = k;
      break;
    }
    if (pr != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pr, j));
    if (pc != k) {
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, k), a(r, pc));
      std::swap(col[k], col[pc]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal f = a(r, k) / a(k, k);
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a(r, j) -= f * a(k, j);
    }
  }
  if (rank == n)
    throw NoKernelError("null_vector: no pivot below singularity threshold");

  std::vector<BigReal> x(n, BigReal(0));
  x[rank] = 1;
  for (std::size_t k = rank; k-- > 0;) {
    BigReal s(0);
    for (std::size_t j = k + 1; j <= rank; ++j) s += a(k, j) * x[j];
    x[k] = -s / a(k, k);
  }
  std::vector<BigReal> v(n);
  for (std::size_t j = 0; j < n; ++j) v[col[j]] = x[j];

  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (abs(v[i]) > abs(v[imax])) imax = i;
  const BigReal pivot_component = v[imax];
  for (auto& c : v) c /= pivot_component;

  BigReal residual(0);
  for (std::size_t i = 0; i < n; ++i) {
    BigReal s(0);
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
    if (abs(s) > residual) residual = abs(s);
  }
  if (residual / mat_max > pow(BigReal(10), -BigReal(ctx.decimal_digits()) / 2))
    throw PrecisionError("null_vector: kernel residual too large; raise decimal_digits");
  return v;
}

}  // namespace oppq
