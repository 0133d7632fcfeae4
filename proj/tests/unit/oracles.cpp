#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

Mat identity(std::size_t n) {
  Mat m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

Mat multiply(const Mat& a, const Mat& b) {
  Mat c(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

namespace {

Mat minor_of(const Mat& a, std::size_t row, std::size_t col) {
  Mat m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == row) continue;
    std::vector<double> r;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != col) r.push_back(a[i][j]);
    m.push_back(r);
  }
  return m;
}

}  // namespace

double det(const Mat& a) {
  if (a.size() == 1) return a[0][0];
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d += (j % 2 ? -1.0 : 1.0) * a[0][j] * det(minor_of(a, 0, j));
  return d;
}

Mat adjugate_inverse(const Mat& a) {
  const std::size_t n = a.size();
  const double d = det(a);
  Mat inv(n, std::vector<double>(n));
  if (n == 1) {
    inv[0][0] = 1.0 / d;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[j][i] = ((i + j) % 2 ? -1.0 : 1.0) * det(minor_of(a, i, j)) / d;
  return inv;
}

std::vector<double> eigenvalues(Mat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

Mat random_spd(std::mt19937_64& rng, std::size_t n, double shift) {
  std::normal_distribution<double> z(0.0, 1.0);
  Mat a(n, std::vector<double>(n));
  for (auto& r : a)
    for (auto& v : r) v = z(rng);
  Mat s = multiply(a, transpose(a));
  for (std::size_t i = 0; i < n; ++i) s[i][i] += shift;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) s[i][j] = s[j][i];
  return s;
}

Mat random_correlation(std::mt19937_64& rng, std::size_t n) {
  Mat s = random_spd(rng, n, 0.5);
  Mat c(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = i == j ? 1.0 : s[i][j] / std::sqrt(s[i][i] * s[j][j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) c[i][j] = c[j][i];
  return c;
}

double partial3(const Mat& s, int i, int j) {
  const int k = 3 - i - j;
  return (s[i][j] - s[i][k] * s[j][k]) / std::sqrt((1.0 - s[i][k] * s[i][k]) * (1.0 - s[j][k] * s[j][k]));
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> count_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double greater = 0.0, equal = 0.0;
    for (double v : x) {
      if (v > x[i]) greater += 1.0;
      if (v == x[i]) equal += 1.0;
    }
    r[i] = greater + (equal + 1.0) / 2.0;
  }
  return r;
}

Mat toy_sigma() {
  const double u[5][5] = {{1, 0.9914, -0.8964, 0.02526, 0.0656},
                          {0, 1, -0.8916, 0.01981, 0.06647},
                          {0, 0, 1, -0.009747, -0.06140},
                          {0, 0, 0, 1, 0.03622},
                          {0, 0, 0, 0, 1}};
  Mat s(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) s[i][j] = i <= j ? u[i][j] : u[j][i];
  return s;
}

Mat toy_partial() {
  const double u[5][5] = {{1, 0.9574, -0.2114, 0.004786, 0.005037},
                          {0, 1, -0.04897, 0.03900, 0.01206},
                          {0, 0, 1, 0.02736, -0.006288},
                          {0, 0, 0, 1, 0.03527},
                          {0, 0, 0, 0, 1}};
  Mat s(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) s[i][j] = i <= j ? u[i][j] : u[j][i];
  return s;
}

}  // namespace oracle
