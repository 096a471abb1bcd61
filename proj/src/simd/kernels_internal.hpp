#pragma once

#include "contour/simd/kernels.hpp"

namespace contour::simd {

namespace scalar {
void squared_distances(const double* z, std::size_t n, std::size_t p, std::size_t i,
                       double* out);
void abs_differences(const double* y, double yi, std::size_t count, double* out);
std::size_t tube_members(const double* d_i, const double* d_j, std::size_t n, double dd,
                         double rho2, std::uint32_t* members);
void accumulate_outer(double* h, const double* diff, std::size_t p);
}  // namespace scalar

#if defined(CONTOUR_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}  // namespace avx2
#endif

}  // namespace contour::simd
