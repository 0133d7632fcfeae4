#include "corrgraph/graph_export.hpp"

#include <cstdio>
#include <ostream>

namespace corrgraph {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string format_prob(double p) {
  // printf rounds the exact binary value to nearest, ties to even.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", p);
  return buf;
}

GraphExport to_export(const CredibleGraph& g, const std::vector<std::string>& labels,
                      const std::vector<double>& mean_partial) {
  GraphExport out;
  out.labels = labels;
  for (std::size_t i = out.labels.size(); i < g.p; ++i) out.labels.push_back("V" + std::to_string(i + 1));
  for (std::size_t i = 0; i < g.p; ++i) out.nodes.push_back(i);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g.p; ++i)
    for (std::size_t j = i + 1; j < g.p; ++j, ++k) {
      if (g.edge_prob[k] == 0.0) continue;
      ExportEdge e{i, j, g.edge_prob[k], std::nullopt};
      if (!mean_partial.empty()) e.partial = mean_partial[k];
      out.edges.push_back(e);
    }
  out.metadata["kind"] = "credible_graph";
  out.metadata["p"] = g.p;
  out.metadata["n_post"] = g.n_post;
  out.metadata["threshold"] = g.threshold;
  return out;
}

void write_edge_list(std::ostream& out, const GraphExport& g) {
  for (const auto& e : g.edges) out << e.i + 1 << ' ' << e.j + 1 << ' ' << format_prob(e.prob) << '\n';
}

void write_dot(std::ostream& out, const GraphExport& g) {
  out << "graph corrgraph {\n";
  for (std::size_t n : g.nodes) out << "  " << n + 1 << " [label=\"" << dot_escape(g.labels[n]) << "\"];\n";
  for (const auto& e : g.edges) {
    out << "  " << e.i + 1 << " -- " << e.j + 1 << " [label=\"" << format_prob(e.prob) << "\"";
    if (e.partial) out << ", partial=\"" << format_prob(*e.partial) << "\"";
    out << "];\n";
  }
  out << "}\n";
}

void write_json(std::ostream& out, const GraphExport& g) {
  nlohmann::ordered_json doc;
  doc["metadata"] = g.metadata;
  auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
  for (std::size_t n : g.nodes) nodes.push_back({{"id", n + 1}, {"label", g.labels[n]}});
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) {
    nlohmann::ordered_json je{{"source", e.i + 1}, {"target", e.j + 1}, {"prob", std::stod(format_prob(e.prob))}};
    if (e.partial) je["partial"] = std::stod(format_prob(*e.partial));
    edges.push_back(std::move(je));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace corrgraph
