#include "corrgraph/linalg.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "corrgraph/error.hpp"
#include "corrgraph/simd.hpp"

namespace corrgraph::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw InputError("matrix data size does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  const Matrix bt = b.transpose();
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = simd::dot(a.row(i), bt.row(j));
  return out;
}

SymMatrix::SymMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw InputError("symmetric matrix must be square and non-empty");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i)) throw InputError("matrix is not symmetric");
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw InputError("symmetric matrix must be square and non-empty");
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  return SymMatrix(std::move(out));
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

namespace {

// Factorises m + ridge*I in place into `lower`; false on a failed pivot.
bool try_factor(const SymMatrix& m, double ridge, double tolerance, Matrix& lower) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    auto li = lower.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      auto lj = lower.row(j);
      const double partial = simd::dot(li.first(j), lj.first(j));
      double s = m(i, j) - partial;
      if (i == j) {
        s += ridge;
        if (!(s >= tolerance)) return false;  // also rejects NaN
        li[i] = std::sqrt(s);
      } else {
        li[j] = s / lj[j];
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) li[j] = 0.0;
  }
  return true;
}

}  // namespace

CholeskyFactor cholesky(const SymMatrix& m, const RidgePolicy& policy) {
  const std::size_t n = m.dim();
  const double scale = m.trace() / static_cast<double>(n);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw NotPositiveDefinite("matrix has non-positive or non-finite mean diagonal");
  }
  const double tolerance = policy.pivot_tolerance * scale;
  CholeskyFactor out{n, Matrix(n, n), 0.0};
  if (try_factor(m, 0.0, tolerance, out.lower)) return out;

  const double cap = policy.cap * scale;
  for (double ridge = policy.start * scale; ridge > 0.0 && ridge <= cap * (1.0 + 1e-12);
       ridge *= policy.growth) {
    if (try_factor(m, ridge, tolerance, out.lower)) {
      out.ridge_applied = ridge;
      return out;
    }
  }
  throw NotPositiveDefinite("Cholesky factorisation failed at the maximum ridge (" +
                            std::to_string(cap) + ") for a " + std::to_string(n) + "x" +
                            std::to_string(n) + " matrix");
}

Matrix invert_lower(const CholeskyFactor& factor) {
  const Matrix& l = factor.lower;
  const std::size_t n = factor.dim;
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = j; k < i; ++k) acc += l(i, k) * inv(k, j);
      inv(i, j) = -acc / l(i, i);
    }
  }
  return inv;
}

SymMatrix spd_inverse(const SymMatrix& m, const RidgePolicy& policy) {
  const Matrix inv_l = invert_lower(cholesky(m, policy));
  const std::size_t n = m.dim();
  // Columns of L^-1 are contiguous rows of its transpose.
  const Matrix cols = inv_l.transpose();
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // Entries above the diagonal of L^-1 are zero, so start at max(i, j).
      out.set(i, j, simd::dot(cols.row(i).subspan(j), cols.row(j).subspan(j)));
    }
  return out;
}

double log_det(const CholeskyFactor& factor) {
  double acc = 0.0;
  for (std::size_t i = 0; i < factor.dim; ++i) acc += std::log(factor.lower(i, i));
  return 2.0 * acc;
}

SymMatrix reconstruct(const CholeskyFactor& factor) {
  const std::size_t n = factor.dim;
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      out.set(i, j, simd::dot(factor.lower.row(i).first(j + 1), factor.lower.row(j).first(j + 1)));
  return out;
}

SymMatrix gram(const Matrix& x) {
  const Matrix cols = x.transpose();
  const std::size_t p = x.cols();
  SymMatrix out(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) out.set(i, j, simd::dot(cols.row(i), cols.row(j)));
  return out;
}

void lower_times(const Matrix& lower, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < lower.rows(); ++i) y[i] = simd::dot(lower.row(i).first(i + 1), x.first(i + 1));
}

}  // namespace corrgraph::linalg
