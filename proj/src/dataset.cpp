#include "corrgraph/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "corrgraph/error.hpp"
#include "corrgraph/rng.hpp"
#include "corrgraph/simd.hpp"

namespace corrgraph {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

}  // namespace

RawDataset parse_delimited(std::istream& in, char delimiter, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  RawDataset out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ParseError(source, line_no, "missing header row");
  for (auto cell : split(line, delimiter)) out.column_names.push_back(unquote(cell));
  const std::size_t p = out.column_names.size();

  std::vector<double> values;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, delimiter);
    if (cells.size() != p) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(p) + " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < p; ++j) {
      const auto cell = cells[j];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw ParseError(source, line_no,
                         "column " + std::to_string(j + 1) + ": not a number: '" + std::string(cell) + "'");
      }
      values.push_back(v);
    }
    ++n;
  }
  if (n < 2) throw ParseError(source, line_no, "need at least two data rows");
  out.values = linalg::Matrix(n, p, std::move(values));
  return out;
}

RawDataset load_delimited(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open data file: " + path.string());
  return parse_delimited(in, delimiter, path.string());
}

void write_delimited(std::ostream& out, const linalg::Matrix& values,
                     const std::vector<std::string>& column_names, char delimiter) {
  for (std::size_t j = 0; j < values.cols(); ++j) {
    if (j) out << delimiter;
    out << (j < column_names.size() ? column_names[j] : "V" + std::to_string(j + 1));
  }
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = 0; j < values.cols(); ++j) {
      if (j) out << delimiter;
      const auto res = std::to_chars(buf, buf + sizeof buf, values(i, j));
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

StandardizedDataset standardize(const linalg::Matrix& values, std::vector<std::string> column_names) {
  const std::size_t n = values.rows();
  const std::size_t p = values.cols();
  if (n == 0 || p == 0) throw InputError("cannot standardise an empty dataset");
  const linalg::Matrix cols = values.transpose();
  StandardizedDataset out;
  out.values = linalg::Matrix(n, p);
  out.column_means.resize(p);
  out.column_sds.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    const auto col = cols.row(j);
    const double mean = simd::sum(col) / static_cast<double>(n);
    const double var = simd::centered_sq(col, mean) / static_cast<double>(n);
    double max_abs = 0.0;
    for (double v : col) max_abs = std::max(max_abs, std::abs(v));
    const double sd = std::sqrt(var);
    if (!(sd > 1e-14 * max_abs) || sd == 0.0) throw ZeroVarianceColumn(j);
    out.column_means[j] = mean;
    out.column_sds[j] = sd;
    for (std::size_t i = 0; i < n; ++i) out.values(i, j) = (col[i] - mean) / sd;
  }
  if (column_names.empty()) {
    for (std::size_t j = 0; j < p; ++j) column_names.push_back("V" + std::to_string(j + 1));
  }
  out.column_names = std::move(column_names);
  return out;
}

StandardizedDataset standardize(const RawDataset& raw) { return standardize(raw.values, raw.column_names); }

PruneResult prune_dependent_rows(const StandardizedDataset& ds) {
  const std::size_t n = ds.n_rows();
  const std::size_t p = ds.n_cols();
  // For p <= 2 every pair of non-constant rows is affinely related, so only
  // scalar multiples (uncentred cosine) count as dependent there.
  const bool affine = p >= 3;
  constexpr double kThreshold = 1.0 - 1e-10;

  std::vector<std::vector<double>> unit_rows(n);
  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = ds.values.row(i);
    std::vector<double> r(row.begin(), row.end());
    const double center = affine ? simd::sum(r) / static_cast<double>(p) : 0.0;
    for (double& v : r) v -= center;
    const double norm = std::sqrt(simd::dot(r, r));
    double scale = 0.0;
    for (double v : row) scale = std::max(scale, std::abs(v));
    if (!(norm > 1e-12 * std::max(scale, 1e-300))) {
      drop[i] = true;  // no spread: an image of any other row
      continue;
    }
    for (double& v : r) v /= norm;
    unit_rows[i] = std::move(r);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (drop[j]) continue;
    for (std::size_t i = 0; i < j; ++i) {
      if (drop[i]) continue;
      if (std::abs(simd::dot(unit_rows[i], unit_rows[j])) >= kThreshold) {
        drop[j] = true;
        break;
      }
    }
  }
  PruneResult out;
  std::vector<double> kept;
  std::size_t kept_rows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (drop[i]) {
      out.removed.push_back(i);
      continue;
    }
    const auto row = ds.values.row(i);
    kept.insert(kept.end(), row.begin(), row.end());
    ++kept_rows;
  }
  if (kept_rows < 2) throw TooFewRows("fewer than two independent rows remain after pruning");
  out.data = ds;
  out.data.values = linalg::Matrix(kept_rows, p, std::move(kept));
  return out;
}

linalg::Matrix draw_correlated(const linalg::Matrix& lower, std::size_t n, std::uint64_t seed) {
  const std::size_t p = lower.rows();
  Rng rng(seed);
  linalg::Matrix out(n, p);
  std::vector<double> z(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : z) v = standard_normal(rng);
    linalg::lower_times(lower, z, out.row(i));
  }
  return out;
}

RawDataset simulate(const linalg::SymMatrix& sigma, std::size_t n, std::uint64_t seed) {
  const std::size_t p = sigma.dim();
  for (std::size_t i = 0; i < p; ++i) {
    if (std::abs(sigma(i, i) - 1.0) > 1e-12) throw InputError("simulate: sigma must have a unit diagonal");
  }
  if (n < p + 1) throw InputError("simulate: need n >= p + 1 rows");
  const auto factor = linalg::cholesky(sigma, linalg::RidgePolicy::none());
  RawDataset out;
  out.values = draw_correlated(factor.lower, n, seed);
  for (std::size_t j = 0; j < p; ++j) out.column_names.push_back("Z" + std::to_string(j + 1));
  return out;
}

RawDataset add_measurement_noise(const RawDataset& ds, std::size_t column, double noise_variance,
                                 std::uint64_t seed) {
  if (column >= ds.n_cols()) throw InputError("add_measurement_noise: column out of range");
  if (!(noise_variance >= 0.0)) throw InputError("add_measurement_noise: variance must be non-negative");
  RawDataset out = ds;
  if (noise_variance == 0.0) return out;
  const double sd = std::sqrt(noise_variance);
  Rng rng(seed);
  for (std::size_t i = 0; i < out.n_rows(); ++i) out.values(i, column) += sd * standard_normal(rng);
  return out;
}

RawDataset subsample_rows(const RawDataset& ds, std::size_t n, std::uint64_t seed) {
  if (n > ds.n_rows()) throw InputError("subsample: requested more rows than available");
  std::vector<std::size_t> idx(ds.n_rows());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates with an explicit draw so the selection does not
  // depend on the standard library's shuffle.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  RawDataset out;
  out.column_names = ds.column_names;
  out.values = linalg::Matrix(n, ds.n_cols());
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = ds.values.row(idx[i]);
    std::copy(src.begin(), src.end(), out.values.row(i).begin());
  }
  return out;
}

linalg::SymMatrix empirical_correlation(const linalg::Matrix& values) {
  const std::size_t n = values.rows();
  const std::size_t p = values.cols();
  linalg::Matrix cols = values.transpose();
  for (std::size_t j = 0; j < p; ++j) {
    auto c = cols.row(j);
    const double mean = simd::sum(c) / static_cast<double>(n);
    for (double& v : c) v -= mean;
    const double norm = std::sqrt(simd::dot(c, c));
    if (norm == 0.0) throw ZeroVarianceColumn(j);
    for (double& v : c) v /= norm;
  }
  linalg::SymMatrix out(p);
  for (std::size_t i = 0; i < p; ++i) {
    out.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < p; ++j) {
      out.set(i, j, std::clamp(simd::dot(cols.row(i), cols.row(j)), -1.0, 1.0));
    }
  }
  return out;
}

}  // namespace corrgraph
