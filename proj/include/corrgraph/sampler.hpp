#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "corrgraph/corrpost.hpp"
#include "corrgraph/dataset.hpp"
#include "corrgraph/graphmodel.hpp"
#include "corrgraph/trace.hpp"

namespace corrgraph {

enum class CorrPrior { uniform, gaussian_empirical };

struct ChainConfig {
  std::size_t n_iter = 10000;               // records, including the initial state
  std::optional<std::size_t> burn_in;       // default: 30% of n_iter
  double prop_sd_corr = 0.05;
  double prop_sd_sigma = 0.05;              // random walk on sigma_ij
  double prop_sd_gamma = 0.05;
  std::size_t k_norm = 20;
  std::size_t n_prime = 0;                  // 0: use n
  std::uint64_t seed = 1;
  LikelihoodForm likelihood_form = LikelihoodForm::single_term;
  bool learn_error_variances = false;
  CorrPrior prior_corr = CorrPrior::uniform;
  double prior_corr_sd = 0.1;               // gaussian_empirical only
  bool use_normalization = true;            // c-hat in the block-1 ratio
  bool prior_only = false;                  // block 1 ignores the data (likelihood and c-hat constant)
  std::size_t sub_block = 0;                // pairs per block-1 step; 0: all jointly
  double sigma2_max = 1.0;                  // support of the uniform prior on sigma_ij^2
  double gamma_max = 1.0;                   // support of the uniform prior on |gamma_i|
  double initial_variance = 0.25;
  double initial_edge_cutoff = 0.5;
  LogdetRoute logdet_route = LogdetRoute::lowrank;
  std::size_t divergence_window = 1000;

  std::size_t effective_burn_in() const;
  std::size_t effective_n_prime(std::size_t n) const;
  /// Throws InputError on inconsistent settings.
  void validate() const;
};

struct InitialState {
  CorrelationState sigma;
  GraphState graph;
};

/// Empirical correlation (ridged and rescaled if needed), edges where the
/// empirical partial correlation reaches the cutoff, uniform variances.
InitialState initial_state(const StandardizedDataset& ds, const ChainConfig& cfg);

/// Metropolis-within-Gibbs. Deterministic in (data, cfg); throws
/// ChainDiverged when block 1 rejects every proposal for
/// cfg.divergence_window consecutive post-burn-in iterations.
ChainTrace run_chain(const StandardizedDataset& ds, const ChainConfig& cfg);

/// Correlation actually seen by the data once the error model is applied.
linalg::SymMatrix attenuated(const linalg::SymMatrix& s, const std::vector<double>& gamma);

using TraceSelector = std::function<double(const TraceRecord&)>;
TraceSelector select_corr(std::size_t p, std::size_t i, std::size_t j);
TraceSelector select_partial(std::size_t p, std::size_t i, std::size_t j);
TraceSelector select_gamma(std::size_t i);

/// Shortest interval covering ceil(mass * N) of the sorted samples.
std::pair<double, double> hpd_of_samples(std::vector<double> samples, double mass);
/// Post-burn-in HPD interval; needs at least 100 post-burn-in records.
std::pair<double, double> hpd_interval(const ChainTrace& trace, const TraceSelector& select, double mass = 0.95);

std::vector<double> post_burn_in_values(const ChainTrace& trace, const TraceSelector& select);

}  // namespace corrgraph
