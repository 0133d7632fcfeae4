#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "corrgraph/corrpost.hpp"
#include "corrgraph/linalg.hpp"
#include "corrgraph/trace.hpp"

namespace corrgraph {

struct PartialCorrMatrix {
  std::size_t p = 0;
  linalg::SymMatrix rho;

  std::vector<double> off_diagonal() const;
};

/// R_ij = -psi_ij / sqrt(psi_ii psi_jj) for Psi = S^-1.
PartialCorrMatrix partial_correlation(const CorrelationState& sigma);
PartialCorrMatrix partial_correlation(const linalg::SymMatrix& s, const linalg::RidgePolicy& policy = {});

enum class LikelihoodForm { single_term, two_term };

struct GraphState {
  std::size_t p = 0;
  std::vector<std::uint8_t> edges;  // pair-indexed g_ij
  std::vector<double> variances;    // pair-indexed sigma_ij^2
  double log_post = 0.0;

  static GraphState empty(std::size_t p, double variance);
};

/// One pair's log likelihood term.
double edge_pair_log_likelihood(int g, double rho, double variance, LikelihoodForm form = LikelihoodForm::single_term);

double edge_log_likelihood(const GraphState& g, const PartialCorrMatrix& r,
                           LikelihoodForm form = LikelihoodForm::single_term);
/// Likelihood plus the Bernoulli(0.5) prior, m ln 0.5.
double edge_log_posterior(const GraphState& g, const PartialCorrMatrix& r,
                          LikelihoodForm form = LikelihoodForm::single_term);

/// Post-burn-in edge frequencies with entries below the threshold zeroed.
struct CredibleGraph {
  std::size_t p = 0;
  std::vector<double> edge_prob;  // pair-indexed
  std::vector<std::uint64_t> counts;
  std::size_t n_post = 0;
  double threshold = 0.05;

  double prob(std::size_t i, std::size_t j) const;
};

/// Entries with frequency >= threshold are kept (H(0) = 1).
CredibleGraph credible_graph(const ChainTrace& trace, double threshold = 0.05);

}  // namespace corrgraph
