// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrgraph/corrpost.hpp"
#include "corrgraph/dataset.hpp"
#include "corrgraph/graphdist.hpp"
#include "corrgraph/graphmodel.hpp"
#include "corrgraph/largenet.hpp"
#include "corrgraph/modelcheck.hpp"
#include "corrgraph/rng.hpp"
#include "corrgraph/sampler.hpp"
#include "helpers.hpp"

using namespace corrgraph;
using linalg::Matrix;
using linalg::SymMatrix;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class... T>
std::string fmt(const T&... parts) {
  std::ostringstream s;
  s.precision(6);
  (s << ... << parts);
  return s.str();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

bool overlaps(std::pair<double, double> a, double lo, double hi) { return a.first <= hi && a.second >= lo; }

std::string interval(std::pair<double, double> a) { return fmt("[", a.first, ", ", a.second, "]"); }

// Toy data the way the CLI builds it: simulate at n = 4000, keep 300 rows.
StandardizedDataset toy_data(std::uint64_t seed, bool noisy) {
  const auto full = simulate(to_sym(oracle::toy_sigma()), 4000, seed);
  auto sub = subsample_rows(full, 300, derive_seed(seed, {1}));
  if (noisy) sub = add_measurement_noise(sub, 1, 0.01, derive_seed(seed, {2}));
  return prune_dependent_rows(standardize(sub)).data;
}

ChainTrace toy_chain(std::uint64_t seed, bool noisy) {
  ChainConfig cfg;
  cfg.n_iter = 10000;
  cfg.seed = seed;
  cfg.learn_error_variances = noisy;
  return run_chain(toy_data(seed, noisy), cfg);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criteria_1_to_3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ChainTrace> clean, noisy;
  for (std::uint64_t seed : {1, 2, 3}) {
    clean.push_back(toy_chain(seed, false));
    noisy.push_back(toy_chain(seed, true));
  }

  const auto& t = clean[0];
  const auto r12 = hpd_interval(t, select_partial(5, 0, 1));
  const auto r13 = hpd_interval(t, select_partial(5, 0, 2));
  const auto r23 = hpd_interval(t, select_partial(5, 1, 2));
  const bool ok1 = overlaps(r12, 0.86, 0.95) && overlaps(r12, 0.9574 - 0.05, 0.9574 + 0.05) &&
                   overlaps(r13, -0.44, -0.27) && overlaps(r23, -0.11, 0.05);
  report(1, ok1,
         fmt("rho12 ", interval(r12), " rho13 ", interval(r13), " rho23 ", interval(r23), " (", seconds_since(t0) / 6.0,
             " s per chain)"));

  bool direction = true;
  bool magnitude = true;
  std::string detail;
  for (std::size_t k = 0; k < 3; ++k) {
    const double pn = credible_graph(noisy[k]).prob(1, 2);
    const double pc = credible_graph(clean[k]).prob(1, 2);
    direction = direction && pn >= 0.05 && pc < 0.05;
    magnitude = magnitude && pn >= 0.05 && pn <= 0.4;
    detail += fmt("seed ", k + 1, ": noisy ", pn, " clean ", pc, "; ");
  }
  report(2, direction && magnitude, detail);

  const auto g2 = hpd_interval(noisy[0], select_gamma(1));
  const bool contains = (g2.first <= 0.1 && g2.second >= 0.1) || (g2.first <= -0.1 && g2.second >= -0.1);
  report(3, contains && g2.second - g2.first <= 0.5, fmt("gamma2 ", interval(g2), " width ", g2.second - g2.first));
}

PosteriorSeries random_series(std::mt19937_64& rng, std::size_t n, double centre, double spread) {
  std::normal_distribution<double> z(centre, spread);
  PosteriorSeries s{{}, n / 5};
  for (std::size_t i = 0; i < n; ++i) s.log_post.push_back(z(rng));
  return s;
}

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(404);
  // Log-posteriors well below zero, as real chains produce; a scale near zero
  // would flatten exp(x / s).
  std::uniform_real_distribution<double> centre(-40.0, -25.0), spread(1.0, 4.0);
  std::size_t negative = 0, asymmetric = 0, nonzero_self = 0, triangle = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto a = random_series(rng, 60, centre(rng), spread(rng));
    const auto b = random_series(rng, 60, centre(rng), spread(rng));
    const auto c = random_series(rng, 60, centre(rng), spread(rng));
    const double ab = delta(a, b).delta, ba = delta(b, a).delta;
    const double bc = delta(b, c).delta, ac = delta(a, c).delta;
    negative += ab < 0.0 || bc < 0.0 || ac < 0.0;
    asymmetric += ab != ba;
    nonzero_self += delta(a, a).delta != 0.0;
    triangle += ac > ab + bc || ab > ac + bc || bc > ab + ac;
  }
  const double secs = seconds_since(t0);
  report(4, negative + asymmetric + nonzero_self + triangle == 0 && secs < 60.0,
         fmt("1000 triples: negative ", negative, ", asymmetric ", asymmetric, ", self-distance ", nonzero_self,
             ", triangle violations ", triangle, " (", secs, " s)"));
}

void criterion_5() {
  std::mt19937_64 rng(505);
  double worst_aff = 0.0, worst_delta = 0.0;
  bool identical = true;
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = random_series(rng, 80, -40.0, 3.0), b = random_series(rng, 80, -41.0, 5.0);
    const auto r = delta(a, b);
    worst_aff = std::max(worst_aff, std::abs(r.affinity - std::exp(-r.delta)));
    worst_delta = std::max(worst_delta, std::abs(r.delta - r.hellinger * std::abs(1.0 / r.d_max_1 - 1.0 / r.d_max_2)));
    const auto self = delta(a, a);
    identical = identical && self.hellinger == 0.0 && self.log_odds_sum == 0.0 && self.log_odds_mean == 0.0;
  }
  report(5, worst_aff <= 1e-12 && worst_delta <= 1e-12 && identical,
         fmt("max |affinity - exp(-delta)| ", worst_aff, ", max delta residual ", worst_delta,
             ", identical traces ", identical ? "D_H = 0, log-odds 0" : "nonzero"));
}

void criterion_6() {
  std::mt19937_64 rng(606);
  double recon = 0.0, inverse = 0.0, partial = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 2 + rep % 3;
    const auto m = to_sym(oracle::random_spd(rng, n));
    const auto f = linalg::cholesky(m);
    Matrix ridged = m.matrix();
    for (std::size_t i = 0; i < n; ++i) ridged(i, i) += f.ridge_applied;
    recon = std::max(recon, max_abs_diff(linalg::reconstruct(f).matrix(), ridged) / (m.trace() / double(n)));
    const auto inv = linalg::invert_lower(f);
    const auto ref = oracle::adjugate_inverse(to_mat(f.lower));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inverse = std::max(inverse, std::abs(inv(i, j) - ref[i][j]));

    const auto s = oracle::random_correlation(rng, 3);
    const auto r = partial_correlation(to_sym(s));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) partial = std::max(partial, std::abs(r.rho(i, j) - oracle::partial3(s, i, j)));
  }
  report(6, recon < 1e-10 && inverse <= 1e-8 && partial <= 1e-10,
         fmt("reconstruction ", recon, ", inverse vs cofactor ", inverse, ", partial vs closed form ", partial));
}

void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(707);
  int smaller = 0;
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const auto sigma = CorrelationState::from_matrix(to_sym(oracle::random_correlation(rng, 3)));
    const auto k20 = estimate_normalization(sigma, 50, 20, derive_seed(rep, {20}));
    const auto k80 = estimate_normalization(sigma, 50, 80, derive_seed(rep, {80}));
    smaller += k80.log_std_error < k20.log_std_error;
  }
  const double secs = seconds_since(t0);
  report(7, smaller >= 45 && secs < 120.0, fmt("SE(K=80) < SE(K=20) in ", smaller, " / 50 (", secs, " s)"));
}

double oracle_edge_posterior(double rho) {
  const double r = std::abs(rho);
  const double v = r * (1.0 - r);
  const double l1 = std::exp(-(1.0 - r) * (1.0 - r) / (2 * v)) / std::sqrt(2 * std::numbers::pi * v);
  const double l0 = std::exp(-r * r / (2 * v)) / std::sqrt(2 * std::numbers::pi * v);
  return l1 / (l0 + l1);
}

void criterion_8() {
  const bool half = edge_posterior_closed_form(0.5) == 0.5;
  bool monotone = true;
  double prev = 0.0;
  for (int k = 1; k <= 99; ++k) {
    const double rho = 0.01 * k;
    const double v = edge_posterior_closed_form(rho);
    monotone = monotone && v >= prev && edge_posterior_closed_form(-rho) == v;
    prev = v;
  }

  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 6, m = 25;
  RelevanceMatrix rel;
  rel.scores = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    rel.item_labels.push_back("item" + std::to_string(i));
    for (std::size_t j = 0; j < m; ++j) rel.scores(i, j) = std::floor(u(rng) * 8) / 8;
  }
  for (std::size_t j = 0; j < m; ++j) rel.feature_labels.push_back("f" + std::to_string(j));
  const auto res = run_largenet(rel, 0.2);

  oracle::Mat rc(n, std::vector<double>(n, 1.0));
  std::vector<std::vector<double>> ranks;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = rel.scores(i, j);
    ranks.push_back(oracle::count_ranks(row));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) rc[i][j] = oracle::pearson(ranks[i], ranks[j]);
  const auto psi = oracle::adjugate_inverse(rc);
  double worst = 0.0;
  std::size_t expected_edges = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rho = -psi[i][j] / std::sqrt(psi[i][i] * psi[j][j]);
      const double post = oracle_edge_posterior(rho);
      worst = std::max(worst, std::abs(res.partial.rho(i, j) - rho));
      worst = std::max(worst, std::abs(res.posterior(i, j) - post));
      expected_edges += post >= 0.2;
    }
  const bool edges = res.graph.edges.size() == expected_edges;
  report(8, half && monotone && worst <= 1e-10 && edges,
         fmt("closed_form(0.5) ", edge_posterior_closed_form(0.5), ", monotone ", monotone ? "yes" : "no",
             ", 6-item max deviation ", worst, ", edges ", res.graph.edges.size(), "/", expected_edges));
}

void criterion_9() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 3 + rep % 40;
    const int levels = rep % 2 ? 5 : 0;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = levels ? std::floor(u(rng) * levels) : u(rng);
      b[i] = levels ? std::floor(u(rng) * levels) : u(rng);
    }
    const auto ra = oracle::count_ranks(a), rb = oracle::count_ranks(b);
    if (std::all_of(ra.begin(), ra.end(), [&](double r) { return r == ra[0]; }) ||
        std::all_of(rb.begin(), rb.end(), [&](double r) { return r == rb[0]; }))
      continue;
    worst = std::max(worst, std::abs(spearman(rank_row(a), rank_row(b)) - oracle::pearson(ra, rb)));
  }
  report(9, worst <= 1e-12, fmt("max |spearman - pearson(ranks)| ", worst));
}

PredictionTask split_task(const SymMatrix& sigma, std::size_t n, std::size_t q, std::vector<std::size_t> unknown,
                          std::uint64_t seed, Matrix& held) {
  const auto ds = standardize(simulate(sigma, n + q, seed));
  Matrix train(n, sigma.dim()), test(q, sigma.dim());
  for (std::size_t i = 0; i < n + q; ++i)
    for (std::size_t j = 0; j < sigma.dim(); ++j) (i < n ? train(i, j) : test(i - n, j)) = ds.values(i, j);
  held = test;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j : unknown) test(i, j) = 0.0;
  return {train, test, std::move(unknown)};
}

std::vector<double> column(const Matrix& m, std::size_t j) {
  std::vector<double> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

void criterion_10() {
  PredictConfig cfg;
  cfg.n_iter = 10000;
  cfg.seed = 10;

  Matrix held_id;
  const auto id = SymMatrix::identity(3);
  const auto task_id = split_task(id, 100, 100, {1, 2}, 1001, held_id);
  const auto cells_id = predict_conditional(task_id, CorrelationState::from_matrix(id), cfg);
  const double ks_id = ks_statistic(cells_id.pooled(0), column(held_id, 1));
  const double cross = oracle::pearson(cells_id.pooled(0), cells_id.pooled(1));

  Matrix held_toy;
  const auto toy = to_sym(oracle::toy_sigma());
  const auto task_toy = split_task(toy, 300, 100, {1}, 1002, held_toy);
  const auto cells_toy = predict_conditional(task_toy, CorrelationState::from_matrix(toy), cfg);
  const double ks_toy = ks_statistic(cells_toy.pooled(0), column(held_toy, 1));

  report(10, ks_id < 0.15 && ks_toy < 0.15 && std::abs(cross) < 0.1,
         fmt("KS identity ", ks_id, ", KS toy ", ks_toy, ", identity cross-correlation ", cross,
             " (acceptance ", cells_id.acceptance_rate, " / ", cells_toy.acceptance_rate, ")"));
}

int run(const std::string& args) {
  const std::string cmd = std::string(CORRGRAPH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs `args` into two output directories and compares every file.
std::string twice(const std::string& name, const std::string& args, const fs::path& root) {
  const auto a = root / (name + "_a"), b = root / (name + "_b");
  const int ca = run(args + " --out " + a.string());
  const int cb = run(args + " --out " + b.string());
  if (ca != 0 || cb != 0) return name + ": exit " + std::to_string(ca) + "/" + std::to_string(cb);
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(a)) files.push_back(e.path().filename().string());
  std::size_t count_b = std::distance(fs::directory_iterator(b), fs::directory_iterator{});
  if (files.empty() || files.size() != count_b) return name + ": file sets differ";
  for (const auto& f : files) {
    if (!fs::exists(b / f)) return name + ": " + f + " missing";
    // The manifest records wall-clock time; compare its artifact digests instead.
    if (f == "manifest.json") {
      const auto ma = nlohmann::json::parse(slurp(a / f)), mb = nlohmann::json::parse(slurp(b / f));
      if (ma["artifacts"] != mb["artifacts"] || ma["config"] != mb["config"]) return name + ": manifest digests differ";
    } else if (slurp(a / f) != slurp(b / f)) {
      return name + ": " + f + " differs";
    }
  }
  return "";
}

void criterion_11() {
  const auto root = fs::temp_directory_path() / "corrgraph_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path conf = fs::path(CORRGRAPH_SOURCE_DIR) / "examples_config";
  std::vector<std::string> problems;
  auto check = [&](const std::string& name, const std::string& args) {
    const auto msg = twice(name, args, root);
    if (!msg.empty()) problems.push_back(msg);
  };

  check("simulate", "simulate --config " + (conf / "toy_noisy.conf").string() + " --seed 11");
  const auto data = (root / "simulate_a" / "data.csv").string();
  const auto noisy = (root / "simulate_a" / "data_noisy.csv").string();
  check("learn", "learn --data " + data + " --subsample 300 --iters 300 --seed 12");
  run("learn --config " + (conf / "toy_noisy.conf").string() + " --data " + noisy +
      " --iters 300 --seed 13 --out " + (root / "learn_noisy").string());
  const auto trace = (root / "learn_a" / "trace.txt").string();
  check("graph", "graph --trace " + trace + " --threshold 0.1");
  check("distance", "distance --trace1 " + trace + " --trace2 " + (root / "learn_noisy" / "trace.txt").string());

  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  {
    std::ofstream scores(root / "scores.csv");
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 20; ++j) scores << "item" << i << ",f" << j << "," << std::floor(u(rng) * 6) / 6 << "\n";
  }
  check("largenet", "largenet --data " + (root / "scores.csv").string() + " --threshold 0.6");

  run("simulate --sigma '1,0,0;0,1,0;0,0,1' --n 60 --seed 14 --out " + (root / "pred_train").string());
  run("simulate --sigma '1,0,0;0,1,0;0,0,1' --n 20 --seed 15 --out " + (root / "pred_test").string());
  check("predict", "predict --config " + (conf / "identity_predict.conf").string() + " --data " +
                       (root / "pred_train" / "data.csv").string() + " --test " +
                       (root / "pred_test" / "data.csv").string() + " --iters 300 --seed 16");

  std::string detail = "simulate, learn, graph, distance, largenet, predict byte-identical";
  if (!problems.empty()) {
    detail.clear();
    for (const auto& p : problems) detail += p + "; ";
  }
  report(11, problems.empty(), detail);
  fs::remove_all(root);
}

}  // namespace

// With arguments, runs only the listed criteria (1, 2 and 3 share one set of chains).
int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<void()>>> checks = {
      {1, criteria_1_to_3}, {4, criterion_4}, {5, criterion_5},   {6, criterion_6},   {7, criterion_7},
      {8, criterion_8},     {9, criterion_9}, {10, criterion_10}, {11, criterion_11}};
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    wanted.push_back(id <= 3 ? 1 : id);
  }
  for (const auto& [id, check] : checks) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    try {
      check();
    } catch (const std::exception& e) {
      std::printf("criterion %2d: FAIL  unexpected exception: %s\n", id, e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
