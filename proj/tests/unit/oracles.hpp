#pragma once
// Independent reference computations for the tests. Nothing here calls the
// library's numerical routines.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;

Mat identity(std::size_t n);
Mat multiply(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);

/// Determinant by cofactor expansion.
double det(const Mat& a);
/// Inverse by the adjugate formula (dim <= 4 in practice).
Mat adjugate_inverse(const Mat& a);
/// Cyclic Jacobi eigenvalues of a symmetric matrix, ascending.
std::vector<double> eigenvalues(Mat a);

/// Random SPD matrix A A^T + shift I.
Mat random_spd(std::mt19937_64& rng, std::size_t n, double shift = 0.5);
/// Random correlation matrix (SPD, unit diagonal).
Mat random_correlation(std::mt19937_64& rng, std::size_t n);

/// (s_ij - s_ik s_jk) / sqrt((1 - s_ik^2)(1 - s_jk^2)) for a 3x3 correlation matrix.
double partial3(const Mat& s, int i, int j);

double pearson(const std::vector<double>& a, const std::vector<double>& b);
/// Rank by counting: #greater + (#equal + 1) / 2.
std::vector<double> count_ranks(const std::vector<double>& x);

/// Toy five-variable correlation matrix; s25 = 0.06647 (see README).
Mat toy_sigma();
/// Its partial correlations as published.
Mat toy_partial();

}  // namespace oracle
