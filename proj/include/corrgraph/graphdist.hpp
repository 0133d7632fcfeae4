#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrgraph/trace.hpp"

namespace corrgraph {

/// The ln p^(t) sequence of one chain; entries from burn_in on are paired
/// across chains iteration by iteration.
struct PosteriorSeries {
  std::vector<double> log_post;
  std::size_t burn_in = 0;

  std::size_t n_post() const noexcept { return log_post.size() > burn_in ? log_post.size() - burn_in : 0; }
};

PosteriorSeries series_of(const ChainTrace& trace);

struct DistanceOptions {
  /// Unequal post-burn-in lengths: LengthMismatch when strict, otherwise
  /// both series are cut back to the shorter length (trailing records dropped).
  bool strict_lengths = false;
};

struct DistanceReport {
  double scale_s = 0.0;
  double hellinger = 0.0;
  double bhattacharyya = 0.0;
  double d_max_1 = 0.0;
  double d_max_2 = 0.0;
  double delta = 0.0;
  double affinity = 1.0;
  double log_odds_sum = 0.0;
  double log_odds_mean = 0.0;
  std::size_t n_terms = 0;
};

struct LogOdds {
  double sum = 0.0;
  double mean = 0.0;
};

/// Largest ln p over every record (burn-in included) of both series.
double global_scale(const PosteriorSeries& a, const PosteriorSeries& b);
double hellinger(const PosteriorSeries& a, const PosteriorSeries& b, double s, const DistanceOptions& opts = {});
/// -ln mean_t(p1 p2), the squared-integrand form.
double bhattacharyya(const PosteriorSeries& a, const PosteriorSeries& b, double s, const DistanceOptions& opts = {});
/// Spread of the scaled post-burn-in values.
double d_max(const PosteriorSeries& a, double s);
LogOdds log_odds(const PosteriorSeries& a, const PosteriorSeries& b, const DistanceOptions& opts = {});
/// Throws DegenerateUncertainty when either d_max is zero.
DistanceReport delta(const PosteriorSeries& a, const PosteriorSeries& b, const DistanceOptions& opts = {});

double global_scale(const ChainTrace& a, const ChainTrace& b);
double hellinger(const ChainTrace& a, const ChainTrace& b, double s, const DistanceOptions& opts = {});
double bhattacharyya(const ChainTrace& a, const ChainTrace& b, double s, const DistanceOptions& opts = {});
double d_max(const ChainTrace& a, double s);
LogOdds log_odds(const ChainTrace& a, const ChainTrace& b, const DistanceOptions& opts = {});
DistanceReport delta(const ChainTrace& a, const ChainTrace& b, const DistanceOptions& opts = {});

nlohmann::ordered_json to_json(const DistanceReport& r);
/// `key=value` lines, values printed with 17 significant digits.
std::string to_key_value(const DistanceReport& r);
/// Columns: iteration_1, scaled_1, iteration_2, scaled_2 over the
/// post-burn-in records; the shorter chain leaves its cells empty.
void write_band_data(std::ostream& out, const PosteriorSeries& a, const PosteriorSeries& b, double s);

/// Published red/white wine values, for comparison only.
namespace wine_reference {
inline constexpr double scale_s = 142.7687;
inline constexpr double hellinger = 0.1153;
inline constexpr double bhattacharyya = -1.7623;
inline constexpr double d_max_white = 0.0694;
inline constexpr double d_max_red = 0.05521;
inline constexpr double delta = 0.44;
inline constexpr double affinity = 0.1030;
inline constexpr double log_odds_mean = 18.9273;
}  // namespace wine_reference

}  // namespace corrgraph
