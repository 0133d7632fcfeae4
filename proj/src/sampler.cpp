#include "corrgraph/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrgraph/error.hpp"
#include "corrgraph/rng.hpp"

namespace corrgraph {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMinSigma = 1e-8;

enum Stream : std::uint64_t { kProposal = 0, kNormCurrent = 1, kNormProposed = 2, kGraph = 3 };

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

bool accept(double u, double log_ratio) {
  if (std::isnan(log_ratio)) return false;
  return log_ratio >= 0.0 || std::log(u) < log_ratio;
}

// Block-1 target pieces for a given (S, gamma).
class CorrTarget {
 public:
  CorrTarget(const StandardizedDataset& ds, const ChainConfig& cfg, std::vector<double> prior_mean)
      : ds_(ds), cfg_(cfg), n_prime_(cfg.effective_n_prime(ds.n_rows())), prior_mean_(std::move(prior_mean)) {}

  // Data-side state: the correlation matrix the likelihood sees.
  std::optional<CorrelationState> effective(const CorrelationState& s, const std::vector<double>& gamma) const {
    if (gamma.empty()) return s;
    return CorrelationState::try_from_matrix(attenuated(s.s, gamma));
  }

  double log_likelihood(const CorrelationState& eff) const {
    if (cfg_.prior_only) return 0.0;
    return log_unnorm_posterior(eff, ds_.values, cfg_.logdet_route);
  }

  double log_c_hat(const CorrelationState& eff, std::uint64_t seed) const {
    if (!cfg_.use_normalization || cfg_.prior_only) return 0.0;
    NormalizationOptions opts;
    opts.route = cfg_.logdet_route;
    return estimate_normalization(eff, n_prime_, cfg_.k_norm, seed, opts).log_value;
  }

  double log_prior(const CorrelationState& s, const std::vector<double>& gamma) const {
    for (double g : gamma)
      if (std::abs(g) > cfg_.gamma_max) return kNegInf;
    if (cfg_.prior_corr == CorrPrior::uniform) return 0.0;
    const auto off = s.off_diagonal();
    double lp = 0.0;
    const double v = cfg_.prior_corr_sd * cfg_.prior_corr_sd;
    for (std::size_t k = 0; k < off.size(); ++k) lp -= (off[k] - prior_mean_[k]) * (off[k] - prior_mean_[k]) / (2.0 * v);
    return lp;
  }

 private:
  const StandardizedDataset& ds_;
  const ChainConfig& cfg_;
  std::size_t n_prime_;
  std::vector<double> prior_mean_;
};

}  // namespace

std::size_t ChainConfig::effective_burn_in() const {
  if (burn_in) return *burn_in;
  return static_cast<std::size_t>(0.3 * static_cast<double>(n_iter));
}

std::size_t ChainConfig::effective_n_prime(std::size_t n) const { return n_prime == 0 ? n : n_prime; }

void ChainConfig::validate() const {
  if (n_iter < 1) throw InputError("n_iter must be at least 1");
  if (effective_burn_in() >= n_iter) throw InputError("burn_in must be smaller than n_iter");
  if (!(prop_sd_corr > 0.0) || !(prop_sd_sigma > 0.0) || !(prop_sd_gamma > 0.0))
    throw InputError("proposal standard deviations must be positive");
  if (k_norm < 2) throw InputError("k_norm must be at least 2");
  if (!(sigma2_max > 0.0)) throw InputError("sigma2_max must be positive");
  if (!(gamma_max > 0.0)) throw InputError("gamma_max must be positive");
  if (!(prior_corr_sd > 0.0)) throw InputError("prior_corr_sd must be positive");
  if (!(initial_variance > 0.0) || initial_variance > sigma2_max)
    throw InputError("initial_variance must lie in (0, sigma2_max]");
  if (divergence_window < 1) throw InputError("divergence_window must be at least 1");
}

linalg::SymMatrix attenuated(const linalg::SymMatrix& s, const std::vector<double>& gamma) {
  linalg::SymMatrix out = s;
  const std::size_t p = s.dim();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) out.set(i, j, adjust_for_error(s(i, j), gamma[i], gamma[j]));
  return out;
}

InitialState initial_state(const StandardizedDataset& ds, const ChainConfig& cfg) {
  const std::size_t p = ds.n_cols();
  auto sigma = std::optional<CorrelationState>(ridge_to_correlation(empirical_correlation(ds.values)));
  const PartialCorrMatrix rho = partial_correlation(*sigma);
  GraphState g = GraphState::empty(p, cfg.initial_variance);
  std::size_t k = 0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j, ++k) g.edges[k] = std::abs(rho.rho(i, j)) >= cfg.initial_edge_cutoff;
  g.log_post = edge_log_posterior(g, rho, cfg.likelihood_form);
  return {std::move(*sigma), std::move(g)};
}

ChainTrace run_chain(const StandardizedDataset& ds, const ChainConfig& cfg) {
  cfg.validate();
  const std::size_t p = ds.n_cols();
  if (p < 2) throw InputError("need at least two columns");
  const std::size_t m = pair_count(p);
  const std::size_t burn_in = cfg.effective_burn_in();

  InitialState init = initial_state(ds, cfg);
  CorrTarget target(ds, cfg, init.sigma.off_diagonal());

  CorrelationState sigma = std::move(init.sigma);
  GraphState graph = std::move(init.graph);
  std::vector<double> gamma(cfg.learn_error_variances ? p : 0, 0.0);

  auto eff = target.effective(sigma, gamma);
  if (!eff) throw InputError("initial state is outside the support");
  double cur_loglik = target.log_likelihood(*eff);
  double cur_prior = target.log_prior(sigma, gamma);
  double cur_log_c = target.log_c_hat(*eff, derive_seed(cfg.seed, {0, kNormCurrent}));
  PartialCorrMatrix rho = partial_correlation(sigma);

  ChainTrace trace;
  trace.p = p;
  trace.burn_in = burn_in;
  trace.column_names = ds.column_names;
  trace.records.reserve(cfg.n_iter);

  auto record = [&](std::uint64_t t) {
    TraceRecord r;
    r.iteration = t;
    r.log_post_corr = cur_loglik - cur_log_c;
    r.log_post_graph = graph.log_post;
    r.log_c_hat = cur_log_c;
    r.corr = sigma.off_diagonal();
    r.partial = rho.off_diagonal();
    r.edges = graph.edges;
    r.variances = graph.variances;
    r.gamma = gamma;
    trace.records.push_back(std::move(r));
  };
  record(0);

  // Block-1 pair groups.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  const std::size_t step = cfg.sub_block == 0 ? m : cfg.sub_block;
  for (std::size_t b = 0; b < m; b += step) blocks.emplace_back(b, std::min(m, b + step));

  std::size_t rejected_run = 0;
  for (std::uint64_t t = 1; t < cfg.n_iter; ++t) {
    Rng rng(derive_seed(cfg.seed, {t, kProposal}));
    bool any_accepted = false;

    // Block 1: S (and gamma) given the data.
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto off = sigma.off_diagonal();
      double log_q = 0.0;
      for (std::size_t k = blocks[b].first; k < blocks[b].second; ++k) {
        const double cur = off[k];
        const double prop = truncated_normal(rng, cur, cfg.prop_sd_corr, -1.0, 1.0);
        // q(cur | prop) / q(prop | cur) reduces to the ratio of truncation masses.
        log_q += log_truncation_mass(cur, cfg.prop_sd_corr, -1.0, 1.0) -
                 log_truncation_mass(prop, cfg.prop_sd_corr, -1.0, 1.0);
        off[k] = prop;
      }
      std::vector<double> gamma_prop = gamma;
      if (b == 0)
        for (double& g : gamma_prop) g += cfg.prop_sd_gamma * standard_normal(rng);
      const double u = uniform01(rng);
      ++trace.acceptance.corr_proposed;

      auto prop_sigma = CorrelationState::try_from_off_diagonal(p, off);
      if (!prop_sigma) continue;
      const double prop_prior = target.log_prior(*prop_sigma, gamma_prop);
      if (prop_prior == kNegInf) continue;
      auto prop_eff = target.effective(*prop_sigma, gamma_prop);
      if (!prop_eff) continue;

      const std::uint64_t step_id = t * blocks.size() + b;
      const double prop_loglik = target.log_likelihood(*prop_eff);
      const double prop_log_c = target.log_c_hat(*prop_eff, derive_seed(cfg.seed, {step_id, kNormProposed}));
      // Fresh estimate at the current state for this iteration.
      if (cfg.use_normalization && !cfg.prior_only && (t > 1 || b > 0))
        cur_log_c = target.log_c_hat(*eff, derive_seed(cfg.seed, {step_id, kNormCurrent}));

      const double log_ratio = (prop_loglik - prop_log_c + prop_prior) - (cur_loglik - cur_log_c + cur_prior) + log_q;
      if (accept(u, log_ratio)) {
        sigma = std::move(*prop_sigma);
        eff = std::move(prop_eff);
        gamma = std::move(gamma_prop);
        cur_loglik = prop_loglik;
        cur_log_c = prop_log_c;
        cur_prior = prop_prior;
        ++trace.acceptance.corr_accepted;
        any_accepted = true;
      }
    }
    rho = partial_correlation(sigma);

    // Block 2: edges and variances given rho. The target factorises over
    // pairs, so each pair is its own Metropolis-Hastings step.
    Rng grng(derive_seed(cfg.seed, {t, kGraph}));
    std::size_t k = 0;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j, ++k) {
        const double r = rho.rho(i, j);
        const double q = std::clamp(std::abs(r), 0.0, 1.0);
        const int g_prop = uniform01(grng) < q ? 1 : 0;
        const double sd_cur = std::sqrt(graph.variances[k]);
        const double sd_prop = sd_cur + cfg.prop_sd_sigma * standard_normal(grng);
        const double u = uniform01(grng);
        ++trace.acceptance.graph_proposed;
        if (sd_prop <= kMinSigma || sd_prop * sd_prop > cfg.sigma2_max) continue;
        const int g_cur = graph.edges[k];
        const double log_q_cur = std::log(g_cur ? q : 1.0 - q);
        const double log_q_prop = std::log(g_prop ? q : 1.0 - q);
        const double log_ratio = edge_pair_log_likelihood(g_prop, r, sd_prop * sd_prop, cfg.likelihood_form) -
                                 edge_pair_log_likelihood(g_cur, r, graph.variances[k], cfg.likelihood_form) +
                                 (log_q_cur - log_q_prop) + std::log(sd_prop / sd_cur);
        if (accept(u, log_ratio)) {
          graph.edges[k] = static_cast<std::uint8_t>(g_prop);
          graph.variances[k] = sd_prop * sd_prop;
          ++trace.acceptance.graph_accepted;
        }
      }
    }
    graph.log_post = edge_log_posterior(graph, rho, cfg.likelihood_form);
    record(t);

    if (t >= burn_in) {
      rejected_run = any_accepted ? 0 : rejected_run + 1;
      if (rejected_run >= cfg.divergence_window)
        throw ChainDiverged("block 1 accepted nothing for " + std::to_string(cfg.divergence_window) +
                            " consecutive iterations after burn-in (at iteration " + std::to_string(t) + ")");
    }
  }
  return trace;
}

TraceSelector select_corr(std::size_t p, std::size_t i, std::size_t j) {
  const std::size_t k = pair_index(p, i, j);
  return [k](const TraceRecord& r) { return r.corr.at(k); };
}

TraceSelector select_partial(std::size_t p, std::size_t i, std::size_t j) {
  const std::size_t k = pair_index(p, i, j);
  return [k](const TraceRecord& r) { return r.partial.at(k); };
}

TraceSelector select_gamma(std::size_t i) {
  return [i](const TraceRecord& r) { return r.gamma.at(i); };
}

std::vector<double> post_burn_in_values(const ChainTrace& trace, const TraceSelector& select) {
  std::vector<double> out;
  for (const auto& r : trace.post_burn_in()) out.push_back(select(r));
  return out;
}

std::pair<double, double> hpd_of_samples(std::vector<double> samples, double mass) {
  if (samples.empty()) throw EmptyTrace("no samples for an HPD interval");
  if (!(mass > 0.0 && mass < 1.0)) throw InputError("HPD mass must lie in (0, 1)");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  const auto cover = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(mass * static_cast<double>(n))));
  const std::size_t span = std::max<std::size_t>(cover, 1) - 1;
  std::size_t best = 0;
  for (std::size_t i = 1; i + span < n; ++i)
    if (samples[i + span] - samples[i] < samples[best + span] - samples[best]) best = i;
  return {samples[best], samples[best + span]};
}

std::pair<double, double> hpd_interval(const ChainTrace& trace, const TraceSelector& select, double mass) {
  if (trace.n_post() == 0) throw EmptyTrace("trace has no post-burn-in records");
  if (trace.n_post() < 100) throw InputError("HPD interval needs at least 100 post-burn-in records");
  return hpd_of_samples(post_burn_in_values(trace, select), mass);
}

}  // namespace corrgraph
