#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "corrgraph/corrpost.hpp"
#include "corrgraph/linalg.hpp"
#include "corrgraph/trace.hpp"

namespace corrgraph {

/// Held-out prediction: `test` has the full column layout of `train`; cells
/// in `unknown` columns are ignored on input.
struct PredictionTask {
  linalg::Matrix train;  // standardised n x p
  linalg::Matrix test;   // q x p
  std::vector<std::size_t> unknown;

  std::size_t p() const noexcept { return train.cols(); }
  std::size_t q() const noexcept { return test.rows(); }
  /// Throws InputError on shape mismatches or invalid column indices.
  void validate() const;
};

struct PredictConfig {
  std::size_t n_iter = 10000;
  std::optional<std::size_t> burn_in;  // default: 30% of n_iter
  double prop_sd_cell = 0.2;
  double prop_sd_corr = 0.05;
  std::size_t k_norm = 20;
  std::uint64_t seed = 1;
  bool use_normalization = true;       // joint_predict only
  double prior_corr_sd = 0.1;          // joint_predict: Gaussian prior around the training correlations
  std::size_t cell_block = 0;          // test rows per cell update; 0: all unknown cells jointly
  std::size_t histogram_bins = 64;
  LogdetRoute logdet_route = LogdetRoute::lowrank;

  std::size_t effective_burn_in() const;
  void validate() const;
};

/// Post-burn-in draws of every unknown cell; cell (r, c) is
/// samples[r * unknown.size() + c] for c indexing task.unknown.
struct CellSamples {
  std::size_t q = 0;
  std::vector<std::size_t> unknown;
  std::vector<std::vector<double>> samples;
  std::vector<double> modal;
  double acceptance_rate = 0.0;

  /// All post-burn-in draws of one unknown column pooled over test rows.
  std::vector<double> pooled(std::size_t unknown_pos) const;
};

struct JointPrediction {
  std::vector<std::vector<double>> corr;  // post-burn-in S_ij vectors
  CellSamples cells;
  double acceptance_rate = 0.0;
};

/// Midpoint of the fullest of `bins` equal-width bins over the sample range.
double histogram_mode(const std::vector<double>& samples, std::size_t bins = 64);

/// Per-pair histogram mode of the post-burn-in S_ij, ridged to SPD if needed.
CorrelationState modal_correlation(const ChainTrace& trace, std::size_t bins = 64);

/// Random-walk Metropolis over the unknown cells with S fixed at sigma.
CellSamples predict_conditional(const PredictionTask& task, const CorrelationState& sigma, const PredictConfig& cfg);

/// Unknown cells and S sampled together against the posterior of the
/// training rows stacked on the test rows.
JointPrediction joint_predict(const PredictionTask& task, const PredictConfig& cfg);

/// Kolmogorov-Smirnov statistic between two samples.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// row, column, predicted_mode, held_out; one line per unknown cell.
void write_comparison(std::ostream& out, const CellSamples& cells, const linalg::Matrix* held_out = nullptr);
/// One column per unknown cell, one line per post-burn-in draw.
void write_cell_samples(std::ostream& out, const CellSamples& cells);

}  // namespace corrgraph
