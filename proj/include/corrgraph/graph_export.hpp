#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrgraph/graphmodel.hpp"

namespace corrgraph {

struct ExportEdge {
  std::size_t i = 0;  // zero-based, i < j
  std::size_t j = 0;
  double prob = 0.0;
  std::optional<double> partial;  // signed partial correlation, when known
};

struct GraphExport {
  std::vector<std::string> labels;  // one per node in the source model
  std::vector<std::size_t> nodes;   // nodes to emit, ascending
  std::vector<ExportEdge> edges;    // sorted by (i, j)
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

/// Fixed six decimals, ties to even.
std::string format_prob(double p);

/// Every node is listed; only non-zero edges are emitted.
GraphExport to_export(const CredibleGraph& g, const std::vector<std::string>& labels,
                      const std::vector<double>& mean_partial = {});

/// `i j prob` per line, 1-based node numbers, sorted lexicographically.
void write_edge_list(std::ostream& out, const GraphExport& g);
/// Undirected DOT graph, probability as the edge label.
void write_dot(std::ostream& out, const GraphExport& g);
void write_json(std::ostream& out, const GraphExport& g);

}  // namespace corrgraph
