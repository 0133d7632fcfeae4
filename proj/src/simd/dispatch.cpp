#include <cstdlib>
#include <stdexcept>
#include <string>

#include "corrgraph/simd.hpp"

namespace corrgraph::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(CORRGRAPH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(CORRGRAPH_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_active() {
  if (const char* env = std::getenv("CORRGRAPH_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa) && cpu_supports(isa)) return kernels_for(isa);
    }
  }
  const auto isas = available_isas();
  return kernels_for(isas.back());
}

}  // namespace

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
  }
  switch (isa) {
    case Isa::scalar: return detail::scalar_table;
#if defined(CORRGRAPH_HAVE_AVX2)
    case Isa::avx2: return detail::avx2_table;
#endif
#if defined(CORRGRAPH_HAVE_NEON)
    case Isa::neon: return detail::neon_table;
#endif
    default: break;
  }
  throw std::invalid_argument("kernel variant not compiled: " + std::string(isa_name(isa)));
}

const KernelTable& active() {
  static const KernelTable& table = select_active();
  return table;
}

}  // namespace corrgraph::simd
