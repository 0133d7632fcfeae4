#include "corrgraph/corrpost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrgraph/error.hpp"
#include "corrgraph/parallel.hpp"
#include "corrgraph/rng.hpp"
#include "corrgraph/simd.hpp"

namespace corrgraph {

namespace {

std::optional<CorrelationState> build(linalg::SymMatrix s, bool throw_on_failure) {
  const std::size_t p = s.dim();
  for (std::size_t i = 0; i < p; ++i) {
    if (s(i, i) != 1.0) {
      if (throw_on_failure) throw InputError("correlation matrix must have a unit diagonal");
      return std::nullopt;
    }
    for (std::size_t j = i + 1; j < p; ++j) {
      if (!(std::abs(s(i, j)) < 1.0)) {
        if (throw_on_failure) throw InputError("correlation off-diagonals must lie in (-1, 1)");
        return std::nullopt;
      }
    }
  }
  CorrelationState out;
  out.p = p;
  try {
    out.chol = linalg::cholesky(s, linalg::RidgePolicy::none());
  } catch (const NotPositiveDefinite&) {
    if (throw_on_failure) throw;
    return std::nullopt;
  }
  out.log_det_s = linalg::log_det(out.chol);
  out.s = std::move(s);
  return out;
}

// Rows of D L^-T, i.e. b_i = L^-1 d_i.
linalg::Matrix whiten_rows(const CorrelationState& sigma, const linalg::Matrix& d) {
  const linalg::Matrix inv = linalg::invert_lower(sigma.chol);
  linalg::Matrix b(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i) linalg::lower_times(inv, d.row(i), b.row(i));
  return b;
}

double dense_route(const linalg::Matrix& b) {
  const std::size_t n = b.rows();
  linalg::SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, simd::dot(b.row(i), b.row(j)));
  }
  return linalg::log_det(linalg::cholesky(a));
}

}  // namespace

CorrelationState CorrelationState::from_matrix(linalg::SymMatrix s) { return *build(std::move(s), true); }

std::optional<CorrelationState> CorrelationState::try_from_matrix(linalg::SymMatrix s) {
  return build(std::move(s), false);
}

std::optional<CorrelationState> CorrelationState::try_from_off_diagonal(std::size_t p,
                                                                         const std::vector<double>& upper) {
  if (upper.size() != pair_count(p)) throw InputError("off-diagonal vector has the wrong length");
  linalg::SymMatrix s(p);
  std::size_t k = 0;
  for (std::size_t i = 0; i < p; ++i) {
    s.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < p; ++j) s.set(i, j, upper[k++]);
  }
  return try_from_matrix(std::move(s));
}

CorrelationState ridge_to_correlation(const linalg::SymMatrix& s) {
  const std::size_t p = s.dim();
  linalg::SymMatrix clamped(p);
  for (std::size_t i = 0; i < p; ++i) {
    clamped.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < p; ++j) clamped.set(i, j, std::clamp(s(i, j), -1.0 + 1e-9, 1.0 - 1e-9));
  }
  if (auto direct = CorrelationState::try_from_matrix(clamped)) return std::move(*direct);
  // Off-diagonals in (-1, 1) bound the spectrum below by 2 - p, so a ridge of
  // p times the mean diagonal always succeeds.
  linalg::RidgePolicy policy;
  policy.cap = static_cast<double>(p);
  const linalg::SymMatrix r = linalg::reconstruct(linalg::cholesky(clamped, policy));
  linalg::SymMatrix unit(p);
  for (std::size_t i = 0; i < p; ++i) {
    unit.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < p; ++j)
      unit.set(i, j, std::clamp(r(i, j) / std::sqrt(r(i, i) * r(j, j)), -1.0 + 1e-9, 1.0 - 1e-9));
  }
  return CorrelationState::from_matrix(std::move(unit));
}

std::vector<double> CorrelationState::off_diagonal() const {
  std::vector<double> out;
  out.reserve(pair_count(p));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) out.push_back(s(i, j));
  }
  return out;
}

std::size_t pair_count(std::size_t p) { return p * (p - (p > 0 ? 1 : 0)) / 2; }

std::size_t pair_index(std::size_t p, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * p - i * (i + 1) / 2 + (j - i - 1);
}

double log_det_data_product(const CorrelationState& sigma, const linalg::Matrix& d, LogdetRoute route) {
  if (d.cols() != sigma.p) throw InputError("data column count does not match the correlation matrix");
  if (d.rows() == 0) throw InputError("empty data matrix");
  const linalg::Matrix b = whiten_rows(sigma, d);
  const std::size_t n = b.rows();
  const std::size_t p = b.cols();
  if (route == LogdetRoute::dense || n <= p) return dense_route(b);

  // logdet(eps I_n + B B^T) = (n - p) ln eps + logdet(eps I_p + B^T B), with
  // eps the first ridge of the schedule on the n x n product.
  const linalg::RidgePolicy policy;
  const linalg::SymMatrix m = linalg::gram(b);
  const double scale = m.trace() / static_cast<double>(n);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw NotPositiveDefinite("data product has zero trace");
  const double eps = policy.start * scale;
  linalg::SymMatrix shifted = m;
  for (std::size_t i = 0; i < p; ++i) shifted.set(i, i, m(i, i) + eps);
  try {
    const auto f = linalg::cholesky(shifted, linalg::RidgePolicy::none());
    return static_cast<double>(n - p) * std::log(eps) + linalg::log_det(f);
  } catch (const NotPositiveDefinite&) {
    return dense_route(b);
  }
}

double log_unnorm_posterior(const CorrelationState& sigma, const linalg::Matrix& d, LogdetRoute route) {
  const double p = static_cast<double>(sigma.p);
  const double n = static_cast<double>(d.rows());
  return -0.5 * p * sigma.log_det_s - 0.5 * (n + 1.0) * log_det_data_product(sigma, d, route);
}

double log_unnorm_posterior(const CorrelationState& sigma, const StandardizedDataset& ds, LogdetRoute route) {
  return log_unnorm_posterior(sigma, ds.values, route);
}

double NormalizationEstimate::value() const { return std::exp(log_value); }
double NormalizationEstimate::std_error() const { return std::exp(log_std_error); }

NormalizationEstimate estimate_normalization(const CorrelationState& sigma, std::size_t n_prime, std::size_t k,
                                             std::uint64_t seed, const NormalizationOptions& opts) {
  if (k < 2) throw InputError("normalisation needs k >= 2");
  if (n_prime < 1) throw InputError("normalisation needs n' >= 1");
  std::vector<double> terms(k);
  const double exponent = -0.5 * (static_cast<double>(n_prime) + 1.0);
  auto term = [&](std::size_t idx) {
    linalg::Matrix d = draw_correlated(sigma.chol.lower, n_prime, derive_seed(seed, {idx}));
    if (n_prime >= 2) d = standardize(d).values;
    return exponent * log_det_data_product(sigma, d, opts.route);
  };
  if (opts.identical_draws) {
    std::fill(terms.begin(), terms.end(), term(0));
  } else {
    parallel_for(k, [&](std::size_t idx) { terms[idx] = term(idx); });
  }

  const double top = *std::max_element(terms.begin(), terms.end());
  const double kd = static_cast<double>(k);
  double wsum = 0.0;
  double lsum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    wsum += std::exp(terms[i] - top);
    lsum += terms[i];
  }
  const double wmean = wsum / kd;
  const double lmean = lsum / kd;
  double wvar = 0.0;
  double lvar = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double dw = std::exp(terms[i] - top) - wmean;
    const double dl = terms[i] - lmean;
    wvar += dw * dw;
    lvar += dl * dl;
  }
  wvar /= kd - 1.0;
  lvar /= kd - 1.0;

  NormalizationEstimate out;
  out.k_samples = k;
  out.log_value = top + std::log(wmean);
  out.log_std_error = wvar > 0.0 ? top + 0.5 * std::log(wvar / kd) : -std::numeric_limits<double>::infinity();
  out.log_term_sd = std::sqrt(lvar);
  return out;
}

double adjust_for_error(double s_ij, double gamma_i, double gamma_j) {
  return s_ij / std::sqrt((1.0 + gamma_i * gamma_i) * (1.0 + gamma_j * gamma_j));
}

}  // namespace corrgraph
