#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "corrgraph/linalg.hpp"

namespace corrgraph {

/// n x p observations with column labels. No missing cells.
struct RawDataset {
  linalg::Matrix values;
  std::vector<std::string> column_names;

  std::size_t n_rows() const noexcept { return values.rows(); }
  std::size_t n_cols() const noexcept { return values.cols(); }
};

/// Column z-scores (population standard deviation) plus the moments needed
/// to map back to the original scale.
struct StandardizedDataset {
  linalg::Matrix values;
  std::vector<double> column_means;
  std::vector<double> column_sds;
  std::vector<std::string> column_names;

  std::size_t n_rows() const noexcept { return values.rows(); }
  std::size_t n_cols() const noexcept { return values.cols(); }
};

/// Header row of column names, then one observation per line. Cells are
/// decimal-point numbers; an empty or unparsable cell is a ParseError that
/// names the line.
RawDataset parse_delimited(std::istream& in, char delimiter, const std::string& source = "<input>");
RawDataset load_delimited(const std::filesystem::path& path, char delimiter = ',');

/// Shortest round-trip formatting, LF line endings.
void write_delimited(std::ostream& out, const linalg::Matrix& values,
                     const std::vector<std::string>& column_names, char delimiter = ',');

StandardizedDataset standardize(const RawDataset& raw);
StandardizedDataset standardize(const linalg::Matrix& values, std::vector<std::string> column_names = {});

struct PruneResult {
  StandardizedDataset data;
  std::vector<std::size_t> removed;  // indices into the input, ascending
};

/// Drops rows that are (affine, for p >= 3) transformations of an earlier
/// row, and rows with no spread at all. Throws TooFewRows below two rows.
PruneResult prune_dependent_rows(const StandardizedDataset& ds);

/// n rows from N(0, sigma) via Cholesky colouring. sigma must have a unit
/// diagonal and n >= p + 1.
RawDataset simulate(const linalg::SymMatrix& sigma, std::size_t n, std::uint64_t seed);

/// Rows of Z L^T with Z standard normal, no shape checks. `lower` is a
/// Cholesky factor of the target covariance.
linalg::Matrix draw_correlated(const linalg::Matrix& lower, std::size_t n, std::uint64_t seed);

RawDataset add_measurement_noise(const RawDataset& ds, std::size_t column, double noise_variance,
                                 std::uint64_t seed);

/// n rows chosen uniformly without replacement, kept in file order.
RawDataset subsample_rows(const RawDataset& ds, std::size_t n, std::uint64_t seed);

/// Pearson correlation of the columns (population moments).
linalg::SymMatrix empirical_correlation(const linalg::Matrix& values);

}  // namespace corrgraph
