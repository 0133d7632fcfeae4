#include "corrgraph/graphdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>

#include "corrgraph/error.hpp"

namespace corrgraph {

namespace {

struct Paired {
  std::span<const double> a;
  std::span<const double> b;
};

std::span<const double> post(const PosteriorSeries& s) {
  return std::span<const double>(s.log_post).subspan(std::min(s.burn_in, s.log_post.size()));
}

Paired pair_up(const PosteriorSeries& a, const PosteriorSeries& b, const DistanceOptions& opts) {
  auto pa = post(a);
  auto pb = post(b);
  if (pa.empty() || pb.empty()) throw EmptyTrace("series has no post-burn-in records");
  if (pa.size() != pb.size()) {
    if (opts.strict_lengths)
      throw LengthMismatch("post-burn-in lengths differ: " + std::to_string(pa.size()) + " vs " +
                           std::to_string(pb.size()));
    const std::size_t n = std::min(pa.size(), pb.size());
    pa = pa.first(n);
    pb = pb.first(n);
  }
  return {pa, pb};
}

void check_scale(double s) {
  if (!std::isfinite(s) || s == 0.0) throw DegenerateUncertainty("global scale must be finite and non-zero");
}

}  // namespace

PosteriorSeries series_of(const ChainTrace& trace) {
  PosteriorSeries s;
  s.burn_in = trace.burn_in;
  s.log_post.reserve(trace.records.size());
  for (const auto& r : trace.records) s.log_post.push_back(r.log_post_graph);
  return s;
}

double global_scale(const PosteriorSeries& a, const PosteriorSeries& b) {
  if (a.log_post.empty() || b.log_post.empty()) throw EmptyTrace("global scale needs two non-empty series");
  return std::max(*std::max_element(a.log_post.begin(), a.log_post.end()),
                  *std::max_element(b.log_post.begin(), b.log_post.end()));
}

double hellinger(const PosteriorSeries& a, const PosteriorSeries& b, double s, const DistanceOptions& opts) {
  check_scale(s);
  const auto [pa, pb] = pair_up(a, b, opts);
  double sum = 0.0;
  for (std::size_t t = 0; t < pa.size(); ++t) {
    // |sqrt(e^{x/s}) - sqrt(e^{y/s})| = e^{lo/2s} |expm1((hi - lo)/2s)|, ordered so
    // that swapping the chains gives the same bits.
    const double lo = std::min(pa[t], pb[t]);
    const double hi = std::max(pa[t], pb[t]);
    const double d = std::exp(lo / (2.0 * s)) * std::expm1((hi - lo) / (2.0 * s));
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(pa.size()));
}

double bhattacharyya(const PosteriorSeries& a, const PosteriorSeries& b, double s, const DistanceOptions& opts) {
  check_scale(s);
  const auto [pa, pb] = pair_up(a, b, opts);
  double top = -INFINITY;
  for (std::size_t t = 0; t < pa.size(); ++t) top = std::max(top, (pa[t] + pb[t]) / s);
  double sum = 0.0;
  for (std::size_t t = 0; t < pa.size(); ++t) sum += std::exp((pa[t] + pb[t]) / s - top);
  return -(top + std::log(sum / static_cast<double>(pa.size())));
}

double d_max(const PosteriorSeries& a, double s) {
  check_scale(s);
  const auto pa = post(a);
  if (pa.empty()) throw EmptyTrace("series has no post-burn-in records");
  const auto [lo, hi] = std::minmax_element(pa.begin(), pa.end());
  // e^{hi/s} - e^{lo/s} with the sign of s deciding which is larger.
  const double x = std::max(*hi / s, *lo / s);
  const double y = std::min(*hi / s, *lo / s);
  return -std::exp(x) * std::expm1(y - x);
}

LogOdds log_odds(const PosteriorSeries& a, const PosteriorSeries& b, const DistanceOptions& opts) {
  const auto [pa, pb] = pair_up(a, b, opts);
  LogOdds out;
  for (std::size_t t = 0; t < pa.size(); ++t) out.sum += pa[t] - pb[t];
  out.mean = out.sum / static_cast<double>(pa.size());
  return out;
}

DistanceReport delta(const PosteriorSeries& a, const PosteriorSeries& b, const DistanceOptions& opts) {
  DistanceReport r;
  r.scale_s = global_scale(a, b);
  r.d_max_1 = d_max(a, r.scale_s);
  r.d_max_2 = d_max(b, r.scale_s);
  if (r.d_max_1 == 0.0 || r.d_max_2 == 0.0)
    throw DegenerateUncertainty("a chain has a constant posterior trace (D_max = 0)");
  r.hellinger = hellinger(a, b, r.scale_s, opts);
  r.bhattacharyya = bhattacharyya(a, b, r.scale_s, opts);
  r.delta = r.hellinger * std::abs(1.0 / r.d_max_1 - 1.0 / r.d_max_2);
  r.affinity = std::exp(-r.delta);
  const LogOdds lo = log_odds(a, b, opts);
  r.log_odds_sum = lo.sum;
  r.log_odds_mean = lo.mean;
  r.n_terms = pair_up(a, b, opts).a.size();
  return r;
}

double global_scale(const ChainTrace& a, const ChainTrace& b) { return global_scale(series_of(a), series_of(b)); }
double hellinger(const ChainTrace& a, const ChainTrace& b, double s, const DistanceOptions& opts) {
  return hellinger(series_of(a), series_of(b), s, opts);
}
double bhattacharyya(const ChainTrace& a, const ChainTrace& b, double s, const DistanceOptions& opts) {
  return bhattacharyya(series_of(a), series_of(b), s, opts);
}
double d_max(const ChainTrace& a, double s) { return d_max(series_of(a), s); }
LogOdds log_odds(const ChainTrace& a, const ChainTrace& b, const DistanceOptions& opts) {
  return log_odds(series_of(a), series_of(b), opts);
}
DistanceReport delta(const ChainTrace& a, const ChainTrace& b, const DistanceOptions& opts) {
  return delta(series_of(a), series_of(b), opts);
}

nlohmann::ordered_json to_json(const DistanceReport& r) {
  return {{"scale_s", r.scale_s},         {"hellinger", r.hellinger},       {"bhattacharyya", r.bhattacharyya},
          {"d_max_1", r.d_max_1},         {"d_max_2", r.d_max_2},           {"delta", r.delta},
          {"affinity", r.affinity},       {"log_odds_sum", r.log_odds_sum}, {"log_odds_mean", r.log_odds_mean},
          {"n_terms", r.n_terms}};
}

std::string to_key_value(const DistanceReport& r) {
  std::string out;
  char buf[64];
  auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += key;
    out += '=';
    out += buf;
    out += '\n';
  };
  put("scale_s", r.scale_s);
  put("hellinger", r.hellinger);
  put("bhattacharyya", r.bhattacharyya);
  put("d_max_1", r.d_max_1);
  put("d_max_2", r.d_max_2);
  put("delta", r.delta);
  put("affinity", r.affinity);
  put("log_odds_sum", r.log_odds_sum);
  put("log_odds_mean", r.log_odds_mean);
  out += "n_terms=" + std::to_string(r.n_terms) + '\n';
  return out;
}

void write_band_data(std::ostream& out, const PosteriorSeries& a, const PosteriorSeries& b, double s) {
  check_scale(s);
  const auto pa = post(a);
  const auto pb = post(b);
  char buf[64];
  out << "iteration_1,scaled_1,iteration_2,scaled_2\n";
  for (std::size_t t = 0; t < std::max(pa.size(), pb.size()); ++t) {
    if (t < pa.size()) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g", a.burn_in + t, std::exp(pa[t] / s));
      out << buf;
    } else {
      out << ',';
    }
    out << ',';
    if (t < pb.size()) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g", b.burn_in + t, std::exp(pb[t] / s));
      out << buf;
    } else {
      out << ',';
    }
    out << '\n';
  }
}

}  // namespace corrgraph
