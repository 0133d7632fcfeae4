#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace corrgraph {

/// One iteration of the chain. Pair-indexed vectors hold the upper triangle
/// (i < j) in row-major order; see pair_index.
struct TraceRecord {
  std::uint64_t iteration = 0;
  double log_post_corr = 0.0;   // log_unnorm_posterior of the current S, less ln c-hat when enabled
  double log_post_graph = 0.0;  // edge_log_posterior of the current graph
  double log_c_hat = 0.0;       // ln c-hat at the current S (0 when the normaliser is disabled)
  std::vector<double> corr;      // S_ij
  std::vector<double> partial;   // rho_ij
  std::vector<std::uint8_t> edges;
  std::vector<double> variances; // sigma_ij^2
  std::vector<double> gamma;     // empty unless error variances are learned

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct AcceptanceCounts {
  std::uint64_t corr_proposed = 0;
  std::uint64_t corr_accepted = 0;
  std::uint64_t graph_proposed = 0;
  std::uint64_t graph_accepted = 0;

  double corr_rate() const { return corr_proposed ? double(corr_accepted) / double(corr_proposed) : 0.0; }
  double graph_rate() const { return graph_proposed ? double(graph_accepted) / double(graph_proposed) : 0.0; }

  friend bool operator==(const AcceptanceCounts&, const AcceptanceCounts&) = default;
};

/// records[0] is the initial state; records[t] follows update t. Records with
/// index >= burn_in are the post-burn-in sample.
struct ChainTrace {
  std::size_t p = 0;
  std::size_t burn_in = 0;
  std::vector<std::string> column_names;
  std::vector<TraceRecord> records;
  AcceptanceCounts acceptance;

  std::size_t size() const noexcept { return records.size(); }
  std::size_t n_post() const noexcept { return records.size() > burn_in ? records.size() - burn_in : 0; }
  std::span<const TraceRecord> post_burn_in() const {
    return std::span<const TraceRecord>(records).subspan(std::min(burn_in, records.size()));
  }

  friend bool operator==(const ChainTrace&, const ChainTrace&) = default;
};

}  // namespace corrgraph
