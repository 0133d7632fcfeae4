#pragma once

#include "corrgraph/linalg.hpp"
#include "oracles.hpp"

inline corrgraph::linalg::SymMatrix to_sym(const oracle::Mat& m) {
  const std::size_t n = m.size();
  corrgraph::linalg::Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m[i][j];
  return corrgraph::linalg::SymMatrix::symmetrized(out);
}

inline oracle::Mat to_mat(const corrgraph::linalg::Matrix& m) {
  oracle::Mat out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}
