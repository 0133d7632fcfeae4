#pragma once
// Data-parallel inner loops used by the dense linear algebra, the trace
// distances and the rank correlations.
//
// Every kernel exists as a scalar reference and, where the target allows,
// as an AVX2 or NEON variant. All variants accumulate in four interleaved
// lanes (lane j sums elements j, j+4, j+8, ...) and combine the lanes as
// (l0 + l1) + (l2 + l3) before adding the tail in index order. With
// -ffp-contract=off this makes every variant bit-identical to the scalar
// reference, which the equivalence tests rely on.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace corrgraph::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum_i (x[i] - y[i])^2
  double (*sq_diff)(const double* x, const double* y, std::size_t n);
  // sum_i (x[i] - c)^2
  double (*centered_sq)(const double* x, double c, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
};

/// Variants compiled into this build and supported by the running CPU.
std::vector<Isa> available_isas();

/// Table for a specific ISA. Throws std::invalid_argument when the ISA is
/// not available on this machine.
const KernelTable& kernels_for(Isa isa);

/// The table every module uses. Chosen once: the widest available ISA,
/// unless CORRGRAPH_SIMD=scalar|avx2|neon overrides it.
const KernelTable& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double sq_diff(std::span<const double> x, std::span<const double> y) {
  return active().sq_diff(x.data(), y.data(), x.size());
}
inline double centered_sq(std::span<const double> x, double c) {
  return active().centered_sq(x.data(), c, x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(CORRGRAPH_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(CORRGRAPH_HAVE_NEON)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace corrgraph::simd
