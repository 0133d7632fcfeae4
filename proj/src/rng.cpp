#include "corrgraph/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

namespace corrgraph {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

namespace {

const boost::math::normal& unit_normal() {
  static const boost::math::normal dist(0.0, 1.0);
  return dist;
}

double upper_tail(double z) { return boost::math::cdf(boost::math::complement(unit_normal(), z)); }
double lower_tail(double z) { return boost::math::cdf(unit_normal(), z); }

}  // namespace

double truncated_normal(Rng& rng, double mean, double sd, double lo, double hi) {
  double a = (lo - mean) / sd;
  double b = (hi - mean) / sd;
  // Work in whichever tail keeps the CDF values away from 1.
  const bool flip = a > 0.0;
  if (flip) {
    std::swap(a, b);
    a = -a;
    b = -b;
  }
  const double fa = lower_tail(a);
  const double fb = lower_tail(b);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double z = 0.0;
  if (fb - fa <= 0.0) {
    z = 0.5 * (a + b);
  } else {
    const double u = fa + unif(rng) * (fb - fa);
    const double clamped = std::clamp(u, std::numeric_limits<double>::min(), 1.0 - 1e-16);
    z = boost::math::quantile(unit_normal(), clamped);
    z = std::clamp(z, a, b);
  }
  if (flip) z = -z;
  double x = mean + sd * z;
  // Keep strictly inside the open interval.
  if (x <= lo) x = std::nextafter(lo, hi);
  if (x >= hi) x = std::nextafter(hi, lo);
  return x;
}

double log_truncation_mass(double mean, double sd, double lo, double hi) {
  const double a = (lo - mean) / sd;
  const double b = (hi - mean) / sd;
  double mass;
  if (a > 0.0) {
    mass = upper_tail(a) - upper_tail(b);
  } else if (b < 0.0) {
    mass = lower_tail(b) - lower_tail(a);
  } else {
    mass = 1.0 - lower_tail(a) - upper_tail(b);
  }
  return std::log(mass);
}

}  // namespace corrgraph
