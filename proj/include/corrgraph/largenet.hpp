#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "corrgraph/graph_export.hpp"
#include "corrgraph/graphmodel.hpp"
#include "corrgraph/linalg.hpp"

namespace corrgraph {

struct RelevanceMatrix {
  std::vector<std::string> item_labels;
  std::vector<std::string> feature_labels;
  linalg::Matrix scores;              // items x features; absent pairs score 0
  std::vector<std::string> item_classes;  // empty, or one label per item

  std::size_t n_items() const noexcept { return scores.rows(); }
  std::size_t n_features() const noexcept { return scores.cols(); }
};

/// Sparse `item<d>feature<d>score` triples, one per line. Blank lines and
/// lines starting with '#' are skipped. Items and features are numbered in
/// order of first appearance; a repeated (item, feature) pair is an error.
RelevanceMatrix parse_relevance_triples(std::istream& in, char delimiter = ',', const std::string& source = "<scores>");
RelevanceMatrix load_relevance_triples(const std::filesystem::path& path, char delimiter = ',');

/// `item<d>class` lines; items absent from the scores are an error.
void attach_classes(RelevanceMatrix& rel, std::istream& in, char delimiter = ',', const std::string& source = "<classes>");

struct RankMatrix {
  linalg::Matrix ranks;
};

/// Descending scores get ranks 1, 2, ...; ties share the average rank.
std::vector<double> rank_row(std::span<const double> scores);
RankMatrix rank_rows(const RelevanceMatrix& rel);

/// Pearson correlation of two rank rows. Throws ConstantRanks when either
/// row has no spread and InputError on a length mismatch or fewer than two
/// entries.
double spearman(std::span<const double> a, std::span<const double> b);

/// All pairwise Spearman correlations between items.
linalg::SymMatrix rank_correlation_matrix(const RankMatrix& r);

PartialCorrMatrix partial_from_rankcorr(const linalg::SymMatrix& s_rank, const linalg::RidgePolicy& policy = {});

/// Pr(G = 1 | rho) with sigma^2 = |rho|(1 - |rho|) and a Bernoulli(0.5)
/// prior. Throws DegenerateVariance when |rho| is 0 or 1.
double edge_posterior_closed_form(double rho, LikelihoodForm form = LikelihoodForm::single_term);
/// As above, but returns the limits 0 and 1 at the degenerate endpoints.
double edge_posterior_or_limit(double rho, LikelihoodForm form = LikelihoodForm::single_term);

struct LargeEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double posterior = 0.0;
  double partial = 0.0;
};

struct LargeGraph {
  std::vector<std::string> labels;
  std::vector<std::size_t> nodes;  // items with at least one kept edge
  std::vector<LargeEdge> edges;    // i < j, sorted
  double threshold = 0.9;
  std::size_t n_items = 0;
};

struct LargeNetResult {
  LargeGraph graph;
  PartialCorrMatrix partial;
  linalg::SymMatrix posterior;  // closed-form edge posterior for every pair, 1 on the diagonal
};

LargeNetResult run_largenet(const RelevanceMatrix& rel, double threshold,
                            LikelihoodForm form = LikelihoodForm::single_term);
LargeGraph build_large_graph(const RelevanceMatrix& rel, double threshold,
                             LikelihoodForm form = LikelihoodForm::single_term);

// Class separation. Each item is described by its row of edge posteriors.
// For class c with members C and the remaining items R:
//   intra(c) = mean over pairs i < j in C of |x_i - x_j|^2
//   inter(c) = mean over i in C, j in R of |x_i - x_j|^2
//   ratio(c) = intra(c) / inter(c)
// Mean squared pairwise difference is twice the variance, so the ratio
// compares within-class to between-class spread.
struct ClassRatio {
  std::string label;
  std::size_t members = 0;
  double intra = 0.0;
  double inter = 0.0;
  double ratio = 0.0;
};

/// Throws DegenerateClass with fewer than two classes or a class with
/// fewer than two members. Classes are reported in sorted label order.
std::vector<ClassRatio> class_variance_ratio(const linalg::SymMatrix& posterior, const std::vector<std::string>& classes);

GraphExport to_export(const LargeGraph& g);
void write_class_table(std::ostream& out, const std::vector<ClassRatio>& rows, char delimiter = ',');

}  // namespace corrgraph
