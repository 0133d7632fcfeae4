#pragma once
// Dense linear algebra for the correlation sampler: Cholesky with a relative
// ridge schedule, triangular inversion by forward substitution, and log
// determinants. Matrices are row-major.

#include <cstddef>
#include <span>
#include <vector>

namespace corrgraph::linalg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);

/// Square matrix with entries[i][j] == entries[j][i] exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  /// Throws InputError unless `m` is square, non-empty and exactly symmetric.
  explicit SymMatrix(Matrix m);
  explicit SymMatrix(std::size_t dim, double fill = 0.0) : m_(dim, dim, fill) {}

  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }
  /// (m + m^T)/2; for matrices that are symmetric up to rounding.
  static SymMatrix symmetrized(const Matrix& m);

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  double trace() const;
  const Matrix& matrix() const noexcept { return m_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

/// Ridge schedule, all magnitudes relative to trace(m)/dim. The unridged
/// factorisation is tried first; then ridges start, start*growth, ... up to
/// cap. A pivot fails when the value under the square root is below
/// pivot_tolerance * trace(m)/dim.
struct RidgePolicy {
  double start = 1e-10;
  double growth = 10.0;
  double cap = 1e-4;
  double pivot_tolerance = 1e-12;

  /// Only the unridged attempt.
  static RidgePolicy none() { return RidgePolicy{0.0, 10.0, 0.0, 1e-12}; }
};

struct CholeskyFactor {
  std::size_t dim = 0;
  Matrix lower;
  double ridge_applied = 0.0;  // absolute epsilon added to the diagonal
};

/// Throws NotPositiveDefinite when even the capped ridge fails.
CholeskyFactor cholesky(const SymMatrix& m, const RidgePolicy& policy = {});

/// M with L * M = I, by forward substitution. M is lower triangular.
Matrix invert_lower(const CholeskyFactor& factor);

/// (L^-1)^T (L^-1), exactly symmetric.
SymMatrix spd_inverse(const SymMatrix& m, const RidgePolicy& policy = {});

/// 2 * sum_i ln L_ii
double log_det(const CholeskyFactor& factor);

/// L * L^T
SymMatrix reconstruct(const CholeskyFactor& factor);

/// X^T X for an n x p matrix X.
SymMatrix gram(const Matrix& x);

/// y = M x for a lower-triangular M (only the lower triangle is read).
void lower_times(const Matrix& lower, std::span<const double> x, std::span<double> y);

}  // namespace corrgraph::linalg
