#include "corrgraph/graphmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corrgraph/error.hpp"

namespace corrgraph {

namespace {

PartialCorrMatrix from_precision(const linalg::SymMatrix& psi) {
  const std::size_t p = psi.dim();
  PartialCorrMatrix out{p, linalg::SymMatrix(p)};
  for (std::size_t i = 0; i < p; ++i) {
    out.rho.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < p; ++j) {
      const double r = -psi(i, j) / std::sqrt(psi(i, i) * psi(j, j));
      out.rho.set(i, j, std::clamp(r, -1.0, 1.0));
    }
  }
  return out;
}

}  // namespace

std::vector<double> PartialCorrMatrix::off_diagonal() const {
  std::vector<double> out;
  out.reserve(pair_count(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) out.push_back(rho(i, j));
  return out;
}

PartialCorrMatrix partial_correlation(const CorrelationState& sigma) {
  const linalg::Matrix inv = linalg::invert_lower(sigma.chol);
  const std::size_t p = sigma.p;
  linalg::SymMatrix psi(p);
  const linalg::Matrix t = inv.transpose();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = i; k < p; ++k) s += t(i, k) * t(j, k);
      psi.set(i, j, s);
    }
  return from_precision(psi);
}

PartialCorrMatrix partial_correlation(const linalg::SymMatrix& s, const linalg::RidgePolicy& policy) {
  return from_precision(linalg::spd_inverse(s, policy));
}

GraphState GraphState::empty(std::size_t p, double variance) {
  GraphState g;
  g.p = p;
  g.edges.assign(pair_count(p), 0);
  g.variances.assign(pair_count(p), variance);
  return g;
}

double edge_pair_log_likelihood(int g, double rho, double variance, LikelihoodForm form) {
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * variance);
  const double a = (g - rho) * (g - rho) / (2.0 * variance);
  if (form == LikelihoodForm::single_term) return norm - a;
  const double b = (g + rho) * (g + rho) / (2.0 * variance);
  return norm - a - b;
}

double edge_log_likelihood(const GraphState& g, const PartialCorrMatrix& r, LikelihoodForm form) {
  if (g.p != r.p || g.edges.size() != pair_count(g.p) || g.variances.size() != g.edges.size())
    throw InputError("graph state and partial correlation dimensions differ");
  double total = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < g.p; ++i)
    for (std::size_t j = i + 1; j < g.p; ++j, ++k)
      total += edge_pair_log_likelihood(g.edges[k], r.rho(i, j), g.variances[k], form);
  return total;
}

double edge_log_posterior(const GraphState& g, const PartialCorrMatrix& r, LikelihoodForm form) {
  return edge_log_likelihood(g, r, form) + static_cast<double>(pair_count(g.p)) * std::log(0.5);
}

double CredibleGraph::prob(std::size_t i, std::size_t j) const { return edge_prob[pair_index(p, i, j)]; }

CredibleGraph credible_graph(const ChainTrace& trace, double threshold) {
  const auto post = trace.post_burn_in();
  if (post.empty()) throw EmptyTrace("credible graph needs at least one post-burn-in iteration");
  CredibleGraph out;
  out.p = trace.p;
  out.threshold = threshold;
  out.n_post = post.size();
  const std::size_t m = pair_count(trace.p);
  out.counts.assign(m, 0);
  for (const auto& rec : post)
    for (std::size_t k = 0; k < m; ++k) out.counts[k] += rec.edges[k];
  out.edge_prob.assign(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double freq = static_cast<double>(out.counts[k]) / static_cast<double>(out.n_post);
    // Compare counts exactly so that 5 of 100 meets a 0.05 threshold.
    const bool keep = static_cast<double>(out.counts[k]) >= threshold * static_cast<double>(out.n_post) * (1.0 - 1e-12);
    out.edge_prob[k] = keep ? freq : 0.0;
  }
  return out;
}

}  // namespace corrgraph
