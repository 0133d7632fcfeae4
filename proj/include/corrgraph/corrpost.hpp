#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "corrgraph/dataset.hpp"
#include "corrgraph/linalg.hpp"

namespace corrgraph {

/// Unit-diagonal SPD correlation matrix with its (unridged) Cholesky factor.
struct CorrelationState {
  std::size_t p = 0;
  linalg::SymMatrix s;
  linalg::CholeskyFactor chol;
  double log_det_s = 0.0;

  /// Throws InputError on a non-unit diagonal or |s_ij| >= 1, and
  /// NotPositiveDefinite when s has no unridged factor.
  static CorrelationState from_matrix(linalg::SymMatrix s);
  /// As from_matrix, but returns nullopt when s is outside the support.
  static std::optional<CorrelationState> try_from_matrix(linalg::SymMatrix s);
  /// Builds from the upper-triangle off-diagonals in row-major order.
  static std::optional<CorrelationState> try_from_off_diagonal(std::size_t p, const std::vector<double>& upper);

  std::vector<double> off_diagonal() const;
};

/// Ridge-adjusts a symmetric unit-diagonal matrix to SPD and rescales it
/// back to a unit diagonal. Returns the input unchanged when already valid.
CorrelationState ridge_to_correlation(const linalg::SymMatrix& s);

/// Upper-triangle index (i < j) -> position in the row-major off-diagonal vector.
std::size_t pair_index(std::size_t p, std::size_t i, std::size_t j);
std::size_t pair_count(std::size_t p);

/// How logdet(D S^-1 D^T + eps I) is evaluated. `dense` factors the n x n
/// product under the ridge policy; `lowrank` uses the equivalent p x p
/// determinant identity and is exact whenever the policy settles on its
/// first ridge, which is always the case for full-column-rank D with n > p.
enum class LogdetRoute { dense, lowrank };

/// logdet of D S^-1 D^T after the default ridge policy.
double log_det_data_product(const CorrelationState& sigma, const linalg::Matrix& d,
                            LogdetRoute route = LogdetRoute::lowrank);

/// -(p/2) logdet S - ((n+1)/2) logdet(D S^-1 D^T)
double log_unnorm_posterior(const CorrelationState& sigma, const linalg::Matrix& d,
                            LogdetRoute route = LogdetRoute::lowrank);
double log_unnorm_posterior(const CorrelationState& sigma, const StandardizedDataset& ds,
                            LogdetRoute route = LogdetRoute::lowrank);

struct NormalizationEstimate {
  double log_value = 0.0;       // ln c-hat
  double log_std_error = 0.0;   // ln of the Monte-Carlo standard error of c-hat; -inf when zero
  std::size_t k_samples = 0;
  double log_term_sd = 0.0;     // sample sd of the K log-terms (diagnostic)

  double value() const;      // may overflow to inf; prefer the log fields
  double std_error() const;
};

struct NormalizationOptions {
  bool identical_draws = false;  // reuse the first draw for every k
  LogdetRoute route = LogdetRoute::lowrank;
};

/// c-hat = (1/K) sum_k |D'_k S^-1 D'_k^T|^(-(n'+1)/2), D'_k simulated from S
/// and standardised (when n' >= 2). Deterministic in (sigma, n', k, seed)
/// regardless of thread count.
NormalizationEstimate estimate_normalization(const CorrelationState& sigma, std::size_t n_prime, std::size_t k,
                                             std::uint64_t seed, const NormalizationOptions& opts = {});

/// s_ij / sqrt((1 + g_i^2)(1 + g_j^2))
double adjust_for_error(double s_ij, double gamma_i, double gamma_j);

}  // namespace corrgraph
