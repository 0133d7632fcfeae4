#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace corrgraph {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for a labelled sub-stream, e.g. derive_seed(seed, {iter, k}).
/// Streams derived from distinct paths are independent for practical purposes
/// and do not depend on the order in which they are requested.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

double standard_normal(Rng& rng);

/// Draw from N(mean, sd^2) truncated to (lo, hi) by inverse CDF.
double truncated_normal(Rng& rng, double mean, double sd, double lo, double hi);

/// ln[Phi((hi - mean)/sd) - Phi((lo - mean)/sd)], the log normalising mass of
/// the truncated proposal centred at `mean`.
double log_truncation_mass(double mean, double sd, double lo, double hi);

}  // namespace corrgraph
