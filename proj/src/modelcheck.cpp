#include "corrgraph/modelcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "corrgraph/dataset.hpp"
#include "corrgraph/error.hpp"
#include "corrgraph/rng.hpp"

namespace corrgraph {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool accept(Rng& rng, double log_ratio) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (std::isnan(log_ratio)) return false;
  return log_ratio >= 0.0 || std::log(u) < log_ratio;
}

// Conditional draws of the unknown columns given the known ones under sigma,
// used only to start the chain somewhere sensible.
void fill_conditional(linalg::Matrix& test, const std::vector<std::size_t>& unknown, const CorrelationState& sigma,
                      std::uint64_t seed) {
  const std::size_t p = sigma.p;
  std::vector<std::size_t> known;
  for (std::size_t j = 0; j < p; ++j)
    if (std::find(unknown.begin(), unknown.end(), j) == unknown.end()) known.push_back(j);
  const std::size_t u = unknown.size();
  const std::size_t k = known.size();
  // coef = S_uk S_kk^-1, cov = S_uu - coef S_ku
  linalg::Matrix coef(u, k);
  linalg::Matrix cov(u, u);
  if (k > 0) {
    linalg::SymMatrix skk(k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b <= a; ++b) skk.set(a, b, sigma.s(known[a], known[b]));
    const linalg::SymMatrix inv = linalg::spd_inverse(skk);
    for (std::size_t a = 0; a < u; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        double v = 0.0;
        for (std::size_t c = 0; c < k; ++c) v += sigma.s(unknown[a], known[c]) * inv(c, b);
        coef(a, b) = v;
      }
  }
  for (std::size_t a = 0; a < u; ++a)
    for (std::size_t b = 0; b < u; ++b) {
      double v = sigma.s(unknown[a], unknown[b]);
      for (std::size_t c = 0; c < k; ++c) v -= coef(a, c) * sigma.s(known[c], unknown[b]);
      cov(a, b) = v;
    }
  const auto factor = linalg::cholesky(linalg::SymMatrix::symmetrized(cov));
  Rng rng(seed);
  std::vector<double> z(u);
  std::vector<double> e(u);
  for (std::size_t r = 0; r < test.rows(); ++r) {
    for (double& v : z) v = standard_normal(rng);
    linalg::lower_times(factor.lower, z, e);
    for (std::size_t a = 0; a < u; ++a) {
      double mean = 0.0;
      for (std::size_t c = 0; c < k; ++c) mean += coef(a, c) * test(r, known[c]);
      test(r, unknown[a]) = mean + e[a];
    }
  }
}

linalg::Matrix stack(const linalg::Matrix& top, const linalg::Matrix& bottom) {
  std::vector<double> data(top.data().begin(), top.data().end());
  data.insert(data.end(), bottom.data().begin(), bottom.data().end());
  return linalg::Matrix(top.rows() + bottom.rows(), top.cols(), std::move(data));
}

// Row ranges updated together in one cell proposal.
std::vector<std::pair<std::size_t, std::size_t>> row_blocks(std::size_t q, std::size_t block) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t step = block == 0 ? q : block;
  for (std::size_t r = 0; r < q; r += step) out.emplace_back(r, std::min(q, r + step));
  return out;
}

CellSamples empty_samples(const PredictionTask& task) {
  CellSamples out;
  out.q = task.q();
  out.unknown = task.unknown;
  out.samples.resize(task.q() * task.unknown.size());
  return out;
}

void record_cells(CellSamples& out, const linalg::Matrix& test) {
  const std::size_t u = out.unknown.size();
  for (std::size_t r = 0; r < out.q; ++r)
    for (std::size_t c = 0; c < u; ++c) out.samples[r * u + c].push_back(test(r, out.unknown[c]));
}

void finish_modal(CellSamples& out, std::size_t bins) {
  out.modal.clear();
  for (const auto& s : out.samples) out.modal.push_back(s.empty() ? 0.0 : histogram_mode(s, bins));
}

}  // namespace

void PredictionTask::validate() const {
  if (train.rows() == 0 || train.cols() == 0) throw InputError("empty training data");
  if (test.cols() != train.cols())
    throw InputError("test data has " + std::to_string(test.cols()) + " columns, training data has " +
                     std::to_string(train.cols()));
  if (test.rows() < 1) throw InputError("need at least one test row");
  std::vector<bool> seen(p(), false);
  for (std::size_t j : unknown) {
    if (j >= p()) throw InputError("unknown column index out of range");
    if (seen[j]) throw InputError("unknown column listed twice");
    seen[j] = true;
  }
}

std::size_t PredictConfig::effective_burn_in() const {
  return burn_in ? *burn_in : static_cast<std::size_t>(0.3 * static_cast<double>(n_iter));
}

void PredictConfig::validate() const {
  if (n_iter < 1 || effective_burn_in() >= n_iter) throw InputError("burn_in must be smaller than n_iter");
  if (!(prop_sd_cell > 0.0) || !(prop_sd_corr > 0.0) || !(prior_corr_sd > 0.0))
    throw InputError("proposal and prior standard deviations must be positive");
  if (k_norm < 2) throw InputError("k_norm must be at least 2");
  if (histogram_bins < 1) throw InputError("histogram_bins must be positive");
}

std::vector<double> CellSamples::pooled(std::size_t unknown_pos) const {
  std::vector<double> out;
  const std::size_t u = unknown.size();
  for (std::size_t r = 0; r < q; ++r) {
    const auto& s = samples[r * u + unknown_pos];
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

double histogram_mode(const std::vector<double>& samples, std::size_t bins) {
  if (samples.empty()) throw EmptyTrace("no samples for a histogram mode");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (lo == hi) return lo;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : samples) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    counts[std::min(b, bins - 1)]++;
  }
  const std::size_t best = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  return lo + (static_cast<double>(best) + 0.5) * width;
}

CorrelationState modal_correlation(const ChainTrace& trace, std::size_t bins) {
  const auto post = trace.post_burn_in();
  if (post.empty()) throw EmptyTrace("trace has no post-burn-in records");
  const std::size_t p = trace.p;
  linalg::SymMatrix s(p);
  std::size_t k = 0;
  std::vector<double> column(post.size());
  for (std::size_t i = 0; i < p; ++i) {
    s.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < p; ++j, ++k) {
      for (std::size_t t = 0; t < post.size(); ++t) column[t] = post[t].corr[k];
      s.set(i, j, histogram_mode(column, bins));
    }
  }
  return ridge_to_correlation(s);
}

CellSamples predict_conditional(const PredictionTask& task, const CorrelationState& sigma, const PredictConfig& cfg) {
  task.validate();
  cfg.validate();
  if (sigma.p != task.p()) throw InputError("correlation matrix and data column counts differ");
  CellSamples out = empty_samples(task);
  if (task.unknown.empty()) return out;

  linalg::Matrix test = task.test;
  fill_conditional(test, task.unknown, sigma, derive_seed(cfg.seed, {0, 7}));
  // c-hat depends on sigma only and cancels from every ratio.
  double cur = log_unnorm_posterior(sigma, test, cfg.logdet_route);
  const auto blocks = row_blocks(task.q(), cfg.cell_block);
  const std::size_t burn_in = cfg.effective_burn_in();
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
  for (std::uint64_t t = 1; t <= cfg.n_iter; ++t) {
    Rng rng(derive_seed(cfg.seed, {t}));
    for (const auto& [r0, r1] : blocks) {
      linalg::Matrix prop = test;
      for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t j : task.unknown) prop(r, j) += cfg.prop_sd_cell * standard_normal(rng);
      const double lp = log_unnorm_posterior(sigma, prop, cfg.logdet_route);
      ++proposed;
      if (accept(rng, lp - cur)) {
        test = std::move(prop);
        cur = lp;
        ++accepted;
      }
    }
    if (t > burn_in) record_cells(out, test);
  }
  out.acceptance_rate = proposed ? double(accepted) / double(proposed) : 0.0;
  finish_modal(out, cfg.histogram_bins);
  return out;
}

JointPrediction joint_predict(const PredictionTask& task, const PredictConfig& cfg) {
  task.validate();
  cfg.validate();
  const std::size_t p = task.p();
  const std::size_t m = pair_count(p);
  const std::size_t n_aug = task.train.rows() + task.q();

  const std::vector<double> prior_mean = ridge_to_correlation(empirical_correlation(task.train)).off_diagonal();
  CorrelationState sigma = ridge_to_correlation(empirical_correlation(task.train));
  linalg::Matrix test = task.test;
  if (!task.unknown.empty()) fill_conditional(test, task.unknown, sigma, derive_seed(cfg.seed, {0, 7}));

  auto log_prior = [&](const CorrelationState& s) {
    const auto off = s.off_diagonal();
    double lp = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      lp -= (off[k] - prior_mean[k]) * (off[k] - prior_mean[k]) / (2.0 * cfg.prior_corr_sd * cfg.prior_corr_sd);
    return lp;
  };
  auto log_c = [&](const CorrelationState& s, std::uint64_t seed) {
    if (!cfg.use_normalization) return 0.0;
    NormalizationOptions opts;
    opts.route = cfg.logdet_route;
    return estimate_normalization(s, n_aug, cfg.k_norm, seed, opts).log_value;
  };

  double cur_lik = log_unnorm_posterior(sigma, stack(task.train, test), cfg.logdet_route);
  double cur_prior = log_prior(sigma);
  const std::size_t burn_in = cfg.effective_burn_in();
  JointPrediction out;
  out.cells = empty_samples(task);
  std::uint64_t accepted = 0;
  for (std::uint64_t t = 1; t <= cfg.n_iter; ++t) {
    Rng rng(derive_seed(cfg.seed, {t}));
    linalg::Matrix prop_test = test;
    for (std::size_t r = 0; r < task.q(); ++r)
      for (std::size_t j : task.unknown) prop_test(r, j) += cfg.prop_sd_cell * standard_normal(rng);
    auto off = sigma.off_diagonal();
    double log_q = 0.0;
    for (double& v : off) {
      const double cur = v;
      v = truncated_normal(rng, cur, cfg.prop_sd_corr, -1.0, 1.0);
      log_q += log_truncation_mass(cur, cfg.prop_sd_corr, -1.0, 1.0) -
               log_truncation_mass(v, cfg.prop_sd_corr, -1.0, 1.0);
    }
    auto prop_sigma = CorrelationState::try_from_off_diagonal(p, off);
    double log_ratio = kNegInf;
    double prop_lik = 0.0;
    double prop_prior = 0.0;
    if (prop_sigma) {
      prop_lik = log_unnorm_posterior(*prop_sigma, stack(task.train, prop_test), cfg.logdet_route);
      prop_prior = log_prior(*prop_sigma);
      const double c_prop = log_c(*prop_sigma, derive_seed(cfg.seed, {t, 2}));
      const double c_cur = log_c(sigma, derive_seed(cfg.seed, {t, 1}));
      log_ratio = (prop_lik - c_prop + prop_prior) - (cur_lik - c_cur + cur_prior) + log_q;
    }
    if (accept(rng, log_ratio)) {
      sigma = std::move(*prop_sigma);
      test = std::move(prop_test);
      cur_lik = prop_lik;
      cur_prior = prop_prior;
      ++accepted;
    }
    if (t > burn_in) {
      out.corr.push_back(sigma.off_diagonal());
      record_cells(out.cells, test);
    }
  }
  out.acceptance_rate = double(accepted) / double(cfg.n_iter);
  out.cells.acceptance_rate = out.acceptance_rate;
  finish_modal(out.cells, cfg.histogram_bins);
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InputError("KS statistic needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

void write_comparison(std::ostream& out, const CellSamples& cells, const linalg::Matrix* held_out) {
  out << "row,column,predicted_mode,held_out\n";
  const std::size_t u = cells.unknown.size();
  char buf[64];
  for (std::size_t r = 0; r < cells.q; ++r)
    for (std::size_t c = 0; c < u; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", cells.modal[r * u + c]);
      out << r + 1 << ',' << cells.unknown[c] + 1 << ',' << buf << ',';
      if (held_out) {
        std::snprintf(buf, sizeof buf, "%.17g", (*held_out)(r, cells.unknown[c]));
        out << buf;
      }
      out << '\n';
    }
}

void write_cell_samples(std::ostream& out, const CellSamples& cells) {
  const std::size_t u = cells.unknown.size();
  for (std::size_t k = 0; k < cells.samples.size(); ++k) {
    if (k) out << ',';
    out << 'r' << k / u + 1 << 'c' << cells.unknown[k % u] + 1;
  }
  out << '\n';
  const std::size_t n = cells.samples.empty() ? 0 : cells.samples.front().size();
  char buf[64];
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t k = 0; k < cells.samples.size(); ++k) {
      if (k) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", cells.samples[k][t]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace corrgraph
