#pragma once

// Inner loops of the pairwise estimators. Every kernel has a scalar
// reference version and, on x86-64, an AVX2 version that performs the same
// floating-point operations in the same order per output element, so the two
// produce bitwise-identical results. The active table is chosen once at
// runtime from the CPU features and the CONTOUR_SIMD environment variable
// (`scalar`, `avx2` or `auto`).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace contour::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;

  // out[k] = sum_c (z(k, c) - z(i, c))^2 for k in [0, n), where z is an
  // n x p column-major matrix.
  void (*squared_distances)(const double* z, std::size_t n, std::size_t p, std::size_t i,
                            double* out);

  // out[j] = |yi - y[j]| for j in [0, count).
  void (*abs_differences)(const double* y, double yi, std::size_t count, double* out);

  // Tube membership from two columns of the squared-distance matrix. For the
  // line through points i and j with dd = |z_j - z_i|^2, point k is a member
  // when its squared distance to the line, a2 - ad^2 / dd with
  // a2 = d_i[k] and ad = (d_i[k] + dd - d_j[k]) / 2, is at most rho2.
  // The test is evaluated as a2 * dd - ad * ad <= rho2 * dd. Member indices
  // are written ascending into `members`; the count is returned.
  std::size_t (*tube_members)(const double* d_i, const double* d_j, std::size_t n, double dd,
                              double rho2, std::uint32_t* members);

  // h[a * p + b] += diff[a] * diff[b] over the full p x p block.
  void (*accumulate_outer)(double* h, const double* diff, std::size_t p);
};

const KernelTable& scalar_kernels();

// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();

}  // namespace contour::simd
