#include "corrgraph/largenet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "corrgraph/error.hpp"
#include "corrgraph/parallel.hpp"
#include "corrgraph/simd.hpp"

namespace corrgraph {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

struct Indexer {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t get(std::string_view s) {
    auto [it, inserted] = index.try_emplace(std::string(s), labels.size());
    if (inserted) labels.emplace_back(s);
    return it->second;
  }
};

// Centred rank row scaled to unit norm; Pearson is then a dot product.
std::vector<double> unit_centered(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = simd::sum(x) / n;
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v -= mean;
  const double norm = std::sqrt(simd::dot(out, out));
  // Rank rows hold exact multiples of 0.5, so a constant row centres to
  // exactly zero.
  if (!(norm > 0.0)) throw ConstantRanks("rank row has zero variance");
  for (double& v : out) v /= norm;
  return out;
}

double log_sum_exp2(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

RelevanceMatrix parse_relevance_triples(std::istream& in, char delimiter, const std::string& source) {
  Indexer items;
  Indexer features;
  struct Triple {
    std::size_t item, feature;
    double score;
  };
  std::vector<Triple> triples;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split(t, delimiter);
    if (cells.size() != 3) throw ParseError(source, line_no, "expected item, feature, score");
    if (cells[0].empty() || cells[1].empty()) throw ParseError(source, line_no, "empty item or feature id");
    double score = 0.0;
    const auto [ptr, ec] = std::from_chars(cells[2].data(), cells[2].data() + cells[2].size(), score);
    if (cells[2].empty() || ec != std::errc() || ptr != cells[2].data() + cells[2].size() || !std::isfinite(score))
      throw ParseError(source, line_no, "not a number: '" + std::string(cells[2]) + "'");
    const std::size_t i = items.get(cells[0]);
    const std::size_t f = features.get(cells[1]);
    if (!seen.emplace(std::pair{i, f}, line_no).second)
      throw ParseError(source, line_no, "duplicate score for item '" + std::string(cells[0]) + "'");
    triples.push_back({i, f, score});
  }
  if (items.labels.size() < 2) throw InputError(source + ": need at least two items");
  if (features.labels.size() < 2) throw InputError(source + ": need at least two features");
  RelevanceMatrix out;
  out.item_labels = std::move(items.labels);
  out.feature_labels = std::move(features.labels);
  out.scores = linalg::Matrix(out.item_labels.size(), out.feature_labels.size());
  for (const auto& t : triples) out.scores(t.item, t.feature) = t.score;
  return out;
}

RelevanceMatrix load_relevance_triples(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open score file: " + path.string());
  return parse_relevance_triples(in, delimiter, path.string());
}

void attach_classes(RelevanceMatrix& rel, std::istream& in, char delimiter, const std::string& source) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < rel.item_labels.size(); ++i) index.emplace(rel.item_labels[i], i);
  std::vector<std::string> classes(rel.n_items());
  std::vector<bool> assigned(rel.n_items(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split(t, delimiter);
    if (cells.size() != 2) throw ParseError(source, line_no, "expected item, class");
    const auto it = index.find(std::string(cells[0]));
    if (it == index.end()) throw ParseError(source, line_no, "unknown item '" + std::string(cells[0]) + "'");
    classes[it->second] = std::string(cells[1]);
    assigned[it->second] = true;
  }
  for (std::size_t i = 0; i < assigned.size(); ++i)
    if (!assigned[i]) throw InputError(source + ": no class for item '" + rel.item_labels[i] + "'");
  rel.item_classes = std::move(classes);
}

std::vector<double> rank_row(std::span<const double> scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<double> ranks(n);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    // Positions start..end-1 hold ranks start+1..end; their mean:
    const double avg = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = avg;
    start = end;
  }
  return ranks;
}

RankMatrix rank_rows(const RelevanceMatrix& rel) {
  RankMatrix out{linalg::Matrix(rel.n_items(), rel.n_features())};
  parallel_for(rel.n_items(), [&](std::size_t i) {
    const auto r = rank_row(rel.scores.row(i));
    std::copy(r.begin(), r.end(), out.ranks.row(i).begin());
  });
  return out;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("spearman: rank rows differ in length");
  if (a.size() < 2) throw InputError("spearman: need at least two entries");
  auto centred = [](std::span<const double> x) {
    const double mean = simd::sum(x) / static_cast<double>(x.size());
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v -= mean;
    return out;
  };
  const auto ca = centred(a);
  const auto cb = centred(b);
  const double saa = simd::dot(ca, ca);
  const double sbb = simd::dot(cb, cb);
  if (!(saa > 0.0) || !(sbb > 0.0)) throw ConstantRanks("rank row has zero variance");
  // sqrt(fl(d * d)) == d, so identical rows give exactly 1.
  return std::clamp(simd::dot(ca, cb) / std::sqrt(saa * sbb), -1.0, 1.0);
}

linalg::SymMatrix rank_correlation_matrix(const RankMatrix& r) {
  const std::size_t n = r.ranks.rows();
  if (r.ranks.cols() < 2) throw InputError("spearman: need at least two features");
  linalg::Matrix unit(n, r.ranks.cols());
  parallel_for(n, [&](std::size_t i) {
    const auto u = unit_centered(r.ranks.row(i));
    std::copy(u.begin(), u.end(), unit.row(i).begin());
  });
  linalg::Matrix full(n, n);
  parallel_for(n, [&](std::size_t i) {
    full(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) full(i, j) = std::clamp(simd::dot(unit.row(i), unit.row(j)), -1.0, 1.0);
  });
  linalg::SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, full(i, j));
  return out;
}

PartialCorrMatrix partial_from_rankcorr(const linalg::SymMatrix& s_rank, const linalg::RidgePolicy& policy) {
  for (std::size_t i = 0; i < s_rank.dim(); ++i)
    if (s_rank(i, i) != 1.0) throw InputError("rank-correlation matrix must have a unit diagonal");
  return partial_correlation(s_rank, policy);
}

double edge_posterior_closed_form(double rho, LikelihoodForm form) {
  const double r = std::abs(rho);
  if (!(r > 0.0 && r < 1.0))
    throw DegenerateVariance("edge posterior undefined at |rho| = " + std::to_string(r) + " (zero variance)");
  const double v = r * (1.0 - r);
  if (form == LikelihoodForm::single_term) return 1.0 / (1.0 + std::exp((1.0 - 2.0 * r) / (2.0 * v)));
  const double l1 = edge_pair_log_likelihood(1, r, v, form);
  const double l0 = edge_pair_log_likelihood(0, r, v, form);
  return std::exp(l1 - log_sum_exp2(l0, l1));
}

double edge_posterior_or_limit(double rho, LikelihoodForm form) {
  const double r = std::abs(rho);
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return edge_posterior_closed_form(r, form);
}

LargeNetResult run_largenet(const RelevanceMatrix& rel, double threshold, LikelihoodForm form) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw InputError("threshold must lie in (0, 1)");
  const RankMatrix ranks = rank_rows(rel);
  const linalg::SymMatrix s = rank_correlation_matrix(ranks);
  LargeNetResult out{{}, partial_from_rankcorr(s), linalg::SymMatrix(rel.n_items())};
  const std::size_t n = rel.n_items();
  out.graph.labels = rel.item_labels;
  out.graph.threshold = threshold;
  out.graph.n_items = n;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    out.posterior.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rho = out.partial.rho(i, j);
      const double post = edge_posterior_or_limit(rho, form);
      out.posterior.set(i, j, post);
      if (post >= threshold) {
        out.graph.edges.push_back({i, j, post, rho});
        used[i] = used[j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (used[i]) out.graph.nodes.push_back(i);
  return out;
}

LargeGraph build_large_graph(const RelevanceMatrix& rel, double threshold, LikelihoodForm form) {
  return run_largenet(rel, threshold, form).graph;
}

std::vector<ClassRatio> class_variance_ratio(const linalg::SymMatrix& posterior,
                                             const std::vector<std::string>& classes) {
  const std::size_t n = posterior.dim();
  if (classes.size() != n) throw InputError("one class label per item is required");
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) members[classes[i]].push_back(i);
  if (members.size() < 2) throw DegenerateClass("need at least two classes");
  for (const auto& [label, idx] : members)
    if (idx.size() < 2) throw DegenerateClass("class '" + label + "' has fewer than two members");

  // Sum of squared deviations about the mean and the mean itself, for a set
  // of rows of the posterior matrix.
  auto moments = [&](const std::vector<std::size_t>& rows, std::vector<double>& mean) {
    mean.assign(n, 0.0);
    for (std::size_t r : rows) {
      const auto x = posterior.matrix().row(r);
      for (std::size_t f = 0; f < n; ++f) mean[f] += x[f];
    }
    for (double& v : mean) v /= static_cast<double>(rows.size());
    double ss = 0.0;
    for (std::size_t r : rows) {
      const auto x = posterior.matrix().row(r);
      for (std::size_t f = 0; f < n; ++f) ss += (x[f] - mean[f]) * (x[f] - mean[f]);
    }
    return ss;
  };

  std::vector<ClassRatio> out;
  for (const auto& [label, idx] : members) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0, k = 0; i < n; ++i) {
      if (k < idx.size() && idx[k] == i) {
        ++k;
        continue;
      }
      rest.push_back(i);
    }
    std::vector<double> mc;
    std::vector<double> mr;
    const double sc = moments(idx, mc);
    const double sr = moments(rest, mr);
    const double nc = static_cast<double>(idx.size());
    const double nr = static_cast<double>(rest.size());
    double gap = 0.0;
    for (std::size_t f = 0; f < n; ++f) gap += (mc[f] - mr[f]) * (mc[f] - mr[f]);
    ClassRatio row;
    row.label = label;
    row.members = idx.size();
    // sum_{i<j in C} |xi - xj|^2 = nc * sc
    row.intra = nc * sc / (nc * (nc - 1.0) / 2.0);
    // sum_{i in C, j in R} |xi - xj|^2 = nr sc + nc sr + nc nr |mc - mr|^2
    row.inter = (nr * sc + nc * sr + nc * nr * gap) / (nc * nr);
    row.ratio = row.inter > 0.0 ? row.intra / row.inter : 0.0;
    out.push_back(row);
  }
  return out;
}

GraphExport to_export(const LargeGraph& g) {
  GraphExport out;
  out.labels = g.labels;
  out.nodes = g.nodes;
  for (const auto& e : g.edges) out.edges.push_back({e.i, e.j, e.posterior, e.partial});
  out.metadata["kind"] = "large_graph";
  out.metadata["n_items"] = g.n_items;
  out.metadata["n_nodes"] = g.nodes.size();
  out.metadata["n_edges"] = g.edges.size();
  out.metadata["threshold"] = g.threshold;
  return out;
}

void write_class_table(std::ostream& out, const std::vector<ClassRatio>& rows, char delimiter) {
  out << "class" << delimiter << "members" << delimiter << "intra" << delimiter << "inter" << delimiter << "ratio\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g%c%.17g%c%.17g", r.intra, delimiter, r.inter, delimiter, r.ratio);
    out << r.label << delimiter << r.members << delimiter << buf << '\n';
  }
}

}  // namespace corrgraph
