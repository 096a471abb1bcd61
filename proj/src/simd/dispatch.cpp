#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace contour::simd {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelTable& scalar_kernels() {
  static const KernelTable t{Isa::Scalar, &scalar::squared_distances, &scalar::abs_differences,
                             &scalar::tube_members, &scalar::accumulate_outer};
  return t;
}

const KernelTable* avx2_kernels() {
#if defined(CONTOUR_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("CONTOUR_SIMD");
    const std::string request = env != nullptr ? env : "auto";
    if (request == "scalar") return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace contour::simd
