#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "corrgraph/error.hpp"
#include "corrgraph/sampler.hpp"
#include "helpers.hpp"

using namespace corrgraph;
using linalg::Matrix;
using linalg::SymMatrix;

namespace {

StandardizedDataset pair_data(double r, std::size_t n, std::uint64_t seed) {
  return standardize(simulate(SymMatrix(Matrix(2, 2, {1, r, r, 1})), n, seed));
}

StandardizedDataset toy_data(std::uint64_t seed) {
  return standardize(subsample_rows(simulate(to_sym(oracle::toy_sigma()), 4000, seed), 300, seed + 1));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

}  // namespace

TEST_CASE("config defaults and validation") {
  ChainConfig cfg;
  CHECK(cfg.n_iter == 10000);
  CHECK(cfg.effective_burn_in() == 3000);
  CHECK(cfg.effective_n_prime(300) == 300);
  CHECK(cfg.k_norm == 20);
  CHECK_NOTHROW(cfg.validate());
  cfg.burn_in = 10000;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg.burn_in.reset();
  cfg.prop_sd_corr = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("initial state") {
  const auto id = standardize(simulate(SymMatrix::identity(3), 500, 4));
  const auto a = initial_state(id, ChainConfig{});
  for (double v : a.sigma.off_diagonal()) CHECK(std::abs(v) < 0.15);
  for (auto g : a.graph.edges) CHECK(g == 0);
  for (double v : a.graph.variances) CHECK(v == 0.25);

  const auto toy = initial_state(toy_data(3), ChainConfig{});
  CHECK(toy.graph.edges[pair_index(5, 0, 1)] == 1);
  CHECK(CorrelationState::try_from_matrix(toy.sigma.s).has_value());
}

TEST_CASE("trace length at the burn-in boundary") {
  ChainConfig cfg;
  cfg.n_iter = 5;
  cfg.burn_in = 4;
  const auto t = run_chain(pair_data(0.5, 50, 1), cfg);
  CHECK(t.size() == 5);
  CHECK(t.n_post() == 1);
  CHECK(t.records.front().iteration == 0);
  CHECK(t.records.back().iteration == 4);
}

TEST_CASE("chains are deterministic and internally consistent") {
  ChainConfig cfg;
  cfg.n_iter = 200;
  cfg.seed = 77;
  const auto ds = toy_data(5);
  const auto a = run_chain(ds, cfg);
  const auto b = run_chain(ds, cfg);
  CHECK(a == b);
  cfg.seed = 78;
  CHECK_FALSE(a == run_chain(ds, cfg));

  CHECK(a.acceptance.corr_proposed == 199);
  CHECK(a.acceptance.graph_proposed == 199 * 10);
  for (const auto& r : a.records) {
    CHECK(std::isfinite(r.log_post_graph));
    auto state = CorrelationState::try_from_off_diagonal(5, r.corr);
    REQUIRE(state.has_value());
    const auto rho = partial_correlation(*state);
    GraphState g{5, r.edges, r.variances, 0.0};
    CHECK(std::abs(edge_log_posterior(g, rho) - r.log_post_graph) < 1e-12 * std::max(1.0, std::abs(r.log_post_graph)));
    for (std::size_t k = 0; k < r.partial.size(); ++k) CHECK(r.partial[k] == doctest::Approx(rho.off_diagonal()[k]).epsilon(1e-12));
    for (double v : r.variances) CHECK((v > 0.0 && v <= 1.0));
  }
}

TEST_CASE("thread count does not change the trace") {
  ChainConfig cfg;
  cfg.n_iter = 50;
  const auto ds = toy_data(8);
  const auto serial = run_chain(ds, cfg);
  CHECK(serial == run_chain(ds, cfg));
}

TEST_CASE("pair chain recovers a strong correlation") {
  ChainConfig cfg;
  cfg.n_iter = 4000;
  cfg.seed = 3;
  const auto t = run_chain(pair_data(0.95, 300, 12), cfg);
  const double m = mean_of(post_burn_in_values(t, select_corr(2, 0, 1)));
  MESSAGE("post-burn-in mean of S12: " << m);
  CHECK(std::abs(m - 0.95) <= 0.1);
}

TEST_CASE("constant likelihood leaves the uniform prior invariant") {
  ChainConfig cfg;
  cfg.n_iter = 50000;
  cfg.burn_in = 1000;
  cfg.prior_only = true;
  cfg.prop_sd_corr = 1.0;
  cfg.seed = 21;
  const auto t = run_chain(pair_data(0.3, 20, 2), cfg);
  auto v = post_burn_in_values(t, select_corr(2, 0, 1));
  std::sort(v.begin(), v.end());
  double ks = 0.0;
  const double n = double(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = (v[i] + 1.0) / 2.0;
    ks = std::max({ks, std::abs(double(i + 1) / n - f), std::abs(f - double(i) / n)});
  }
  MESSAGE("KS vs flat: " << ks);
  CHECK(ks < 0.05);
}

TEST_CASE("acceptance rate on the toy problem") {
  ChainConfig cfg;
  cfg.n_iter = 300;
  const auto t = run_chain(toy_data(9), cfg);
  const double rate = t.acceptance.corr_rate();
  MESSAGE("block-1 acceptance: " << rate);
  WARN((rate > 0.05 && rate < 0.6));
}

TEST_CASE("error variances are learned within their support") {
  ChainConfig cfg;
  cfg.n_iter = 200;
  cfg.learn_error_variances = true;
  const auto t = run_chain(toy_data(10), cfg);
  for (const auto& r : t.records) {
    REQUIRE(r.gamma.size() == 5);
    for (double g : r.gamma) CHECK(std::abs(g) <= 1.0);
  }
  CHECK(t.records.front().gamma == std::vector<double>(5, 0.0));
}

TEST_CASE("divergence is detected") {
  ChainConfig cfg;
  cfg.n_iter = 400;
  cfg.burn_in = 10;
  cfg.prop_sd_corr = 5.0;
  cfg.divergence_window = 20;
  CHECK_THROWS_AS(run_chain(toy_data(11), cfg), ChainDiverged);
}

TEST_CASE("hpd intervals") {
  CHECK(hpd_of_samples(std::vector<double>(200, 0.3), 0.95) == std::pair<double, double>{0.3, 0.3});
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> s(10000);
  for (double& x : s) x = z(rng);
  const auto [lo, hi] = hpd_of_samples(s, 0.95);
  CHECK(std::abs(lo + 1.96) < 0.15);
  CHECK(std::abs(hi - 1.96) < 0.15);
  const auto inside = std::count_if(s.begin(), s.end(), [&](double x) { return x >= lo && x <= hi; });
  CHECK(inside >= 9500);
  CHECK_THROWS_AS(hpd_of_samples({}, 0.95), EmptyTrace);

  ChainTrace t;
  t.p = 2;
  t.burn_in = 0;
  for (int i = 0; i < 50; ++i) t.records.push_back(TraceRecord{std::uint64_t(i), 0, 0, 0, {0.1}, {0.1}, {0}, {0.25}, {}});
  CHECK_THROWS_AS(hpd_interval(t, select_corr(2, 0, 1)), InputError);
  t.burn_in = 50;
  CHECK_THROWS_AS(hpd_interval(t, select_corr(2, 0, 1)), EmptyTrace);
}
