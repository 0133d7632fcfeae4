#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "corrgraph/dataset.hpp"
#include "corrgraph/error.hpp"
#include "helpers.hpp"

using namespace corrgraph;
using linalg::Matrix;

namespace {

Matrix random_matrix(std::uint64_t seed, std::size_t n, std::size_t p) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Matrix m(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) m(i, j) = z(rng);
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace

TEST_CASE("parse_delimited reads header and cells") {
  std::istringstream in("a;\"b\";c\n1;2.5;-3e-1\n4;5;6\n");
  const auto raw = parse_delimited(in, ';');
  CHECK(raw.column_names == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(raw.n_rows() == 2);
  CHECK(raw.values(0, 1) == 2.5);
  CHECK(raw.values(0, 2) == -0.3);
  CHECK(raw.values(1, 0) == 4.0);
}

TEST_CASE("parse_delimited errors name the line") {
  std::istringstream bad("a,b\n1,2\n3,x\n");
  try {
    parse_delimited(bad, ',');
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream missing("a,b\n1,2\n3,\n");
  CHECK_THROWS_AS(parse_delimited(missing, ','), ParseError);
  std::istringstream ragged("a,b\n1,2\n3,4,5\n");
  CHECK_THROWS_AS(parse_delimited(ragged, ','), ParseError);
  std::istringstream one_row("a,b\n1,2\n");
  CHECK_THROWS_AS(parse_delimited(one_row, ','), InputError);
}

TEST_CASE("load_delimited of a missing file is an input error") {
  CHECK_THROWS_AS(load_delimited("/nonexistent/file.csv"), InputError);
}

TEST_CASE("write then parse round-trips exactly") {
  const Matrix m = random_matrix(3, 7, 4);
  std::ostringstream out;
  write_delimited(out, m, {"w", "x", "y", "z"}, ';');
  std::istringstream in(out.str());
  const auto raw = parse_delimited(in, ';');
  CHECK(raw.values == m);
  CHECK(raw.column_names == std::vector<std::string>{"w", "x", "y", "z"});
}

TEST_CASE("standardize (1,2,3)") {
  const auto ds = standardize(Matrix(3, 1, {1, 2, 3}));
  CHECK(ds.values(0, 0) == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-14));
  CHECK(std::abs(ds.values(1, 0)) < 1e-15);
  CHECK(ds.values(2, 0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(ds.column_means[0] == doctest::Approx(2.0));
  CHECK(ds.column_sds[0] == doctest::Approx(std::sqrt(2.0 / 3.0)));
}

TEST_CASE("standardize is idempotent and produces unit moments") {
  Matrix m = random_matrix(9, 50, 4);
  for (std::size_t i = 0; i < 50; ++i) m(i, 2) = 100.0 + 7.0 * m(i, 2);
  const auto once = standardize(m);
  for (std::size_t j = 0; j < 4; ++j) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < 50; ++i) mean += once.values(i, j);
    mean /= 50;
    for (std::size_t i = 0; i < 50; ++i) sq += (once.values(i, j) - mean) * (once.values(i, j) - mean);
    CHECK(std::abs(mean) < 1e-10);
    CHECK(std::abs(std::sqrt(sq / 50) - 1.0) < 1e-10);
  }
  const auto twice = standardize(once.values);
  CHECK(max_abs_diff(once.values, twice.values) < 1e-12);
}

TEST_CASE("standardize rejects a constant column") {
  Matrix m = random_matrix(1, 5, 3);
  for (std::size_t i = 0; i < 5; ++i) m(i, 1) = 4.2;
  try {
    standardize(m);
    FAIL("expected ZeroVarianceColumn");
  } catch (const ZeroVarianceColumn& e) {
    CHECK(e.column() == 1);
  }
}

TEST_CASE("prune removes a scaled copy of row 1") {
  auto ds = standardize(random_matrix(5, 8, 4));
  for (std::size_t j = 0; j < 4; ++j) ds.values(4, j) = 2.0 * ds.values(0, j);
  const auto res = prune_dependent_rows(ds);
  CHECK(res.removed == std::vector<std::size_t>{4});
  CHECK(res.data.n_rows() == 7);
}

TEST_CASE("prune keeps a generic dataset and is idempotent") {
  const auto ds = standardize(random_matrix(6, 40, 5));
  const auto res = prune_dependent_rows(ds);
  CHECK(res.removed.empty());
  CHECK(res.data.values == ds.values);
  const auto again = prune_dependent_rows(res.data);
  CHECK(again.removed.empty());
}

TEST_CASE("prune keeps the first of three proportional rows") {
  auto ds = standardize(random_matrix(7, 6, 3));
  for (std::size_t j = 0; j < 3; ++j) {
    ds.values(3, j) = -0.5 * ds.values(1, j);
    ds.values(5, j) = 3.0 * ds.values(1, j) + 1.0;
  }
  const auto res = prune_dependent_rows(ds);
  CHECK(res.removed == std::vector<std::size_t>{3, 5});
  const auto again = prune_dependent_rows(res.data);
  CHECK(again.removed.empty());
}

TEST_CASE("prune throws when fewer than two rows remain") {
  Matrix m(3, 3, {1, 2, 3, 2, 4, 6, 3, 6, 9});
  StandardizedDataset ds{m, {0, 0, 0}, {1, 1, 1}, {"a", "b", "c"}};
  CHECK_THROWS_AS(prune_dependent_rows(ds), TooFewRows);
}

TEST_CASE("simulate identity has near-zero correlations") {
  const auto raw = simulate(linalg::SymMatrix::identity(4), 100000, 77);
  const auto c = empirical_correlation(raw.values);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs(c(i, j)) < 0.02);
}

TEST_CASE("simulate the toy matrix recovers s12") {
  const auto sigma = to_sym(oracle::toy_sigma());
  const auto raw = simulate(sigma, 4000, 2024);
  const auto c = empirical_correlation(raw.values);
  CHECK(std::abs(c(0, 1) - 0.9914) < 0.02);
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) worst = std::max(worst, std::abs(c(i, j) - sigma(i, j)));
  CHECK(worst < 3.0 / std::sqrt(4000.0));
}

TEST_CASE("simulate converges at the 3/sqrt(n) rate") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sigma = to_sym(oracle::random_correlation(rng, 4));
    const std::size_t n = 1000 * seed;
    const auto c = empirical_correlation(simulate(sigma, n, seed).values);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs(c(i, j) - sigma(i, j)) < 3.0 / std::sqrt(double(n)));
  }
}

TEST_CASE("simulate is deterministic and validates input") {
  const auto sigma = to_sym(oracle::toy_sigma());
  CHECK(simulate(sigma, 20, 5).values == simulate(sigma, 20, 5).values);
  CHECK_FALSE(simulate(sigma, 20, 5).values == simulate(sigma, 20, 6).values);
  CHECK_THROWS_AS(simulate(sigma, 5, 1), InputError);
  const linalg::SymMatrix not_unit(Matrix(2, 2, {2, 0, 0, 1}));
  CHECK_THROWS_AS(simulate(not_unit, 10, 1), InputError);
  const linalg::SymMatrix indefinite(Matrix(2, 2, {1, 2, 2, 1}));
  CHECK_THROWS_AS(simulate(indefinite, 10, 1), NotPositiveDefinite);
}

TEST_CASE("measurement noise") {
  const auto raw = simulate(linalg::SymMatrix::identity(2), 200000, 3);
  const auto same = add_measurement_noise(raw, 1, 0.0, 9);
  CHECK(same.values == raw.values);
  const auto noisy = add_measurement_noise(raw, 1, 1.0, 9);
  double mean = 0.0, sq = 0.0;
  const std::size_t n = noisy.n_rows();
  for (std::size_t i = 0; i < n; ++i) {
    mean += noisy.values(i, 1);
    CHECK(noisy.values(i, 0) == raw.values(i, 0));
  }
  mean /= double(n);
  for (std::size_t i = 0; i < n; ++i) sq += (noisy.values(i, 1) - mean) * (noisy.values(i, 1) - mean);
  CHECK(sq / double(n) == doctest::Approx(2.0).epsilon(0.02));

  const auto toy = simulate(to_sym(oracle::toy_sigma()), 300, 4);
  const auto err = add_measurement_noise(toy, 1, 0.01, 5);
  double diff_sq = 0.0;
  for (std::size_t i = 0; i < 300; ++i) diff_sq += std::pow(err.values(i, 1) - toy.values(i, 1), 2);
  CHECK(diff_sq / 300 == doctest::Approx(0.01).epsilon(0.25));
}

TEST_CASE("subsample keeps distinct rows in file order") {
  Matrix m(50, 1);
  for (std::size_t i = 0; i < 50; ++i) m(i, 0) = double(i);
  const RawDataset raw{m, {"i"}};
  const auto sub = subsample_rows(raw, 20, 4);
  REQUIRE(sub.n_rows() == 20);
  for (std::size_t i = 1; i < 20; ++i) CHECK(sub.values(i, 0) > sub.values(i - 1, 0));
  CHECK(subsample_rows(raw, 20, 4).values == sub.values);
  CHECK(subsample_rows(raw, 50, 4).values == m);
  CHECK_THROWS_AS(subsample_rows(raw, 51, 4), InputError);
}

TEST_CASE("empirical correlation matches the pearson oracle") {
  const Matrix m = random_matrix(12, 30, 3);
  const auto c = empirical_correlation(m);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(c(i, i) == doctest::Approx(1.0));
    for (std::size_t j = i + 1; j < 3; ++j) {
      std::vector<double> a(30), b(30);
      for (std::size_t r = 0; r < 30; ++r) {
        a[r] = m(r, i);
        b[r] = m(r, j);
      }
      CHECK(c(i, j) == doctest::Approx(oracle::pearson(a, b)).epsilon(1e-12));
    }
  }
}
