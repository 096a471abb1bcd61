#include "kernels_internal.hpp"

#include <cmath>

namespace contour::simd::scalar {

void squared_distances(const double* z, std::size_t n, std::size_t p, std::size_t i,
                       double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
  for (std::size_t c = 0; c < p; ++c) {
    const double* col = z + c * n;
    const double zi = col[i];
    for (std::size_t k = 0; k < n; ++k) {
      const double v = col[k] - zi;
      out[k] = out[k] + v * v;
    }
  }
}

void abs_differences(const double* y, double yi, std::size_t count, double* out) {
  for (std::size_t j = 0; j < count; ++j) out[j] = std::fabs(yi - y[j]);
}

std::size_t tube_members(const double* d_i, const double* d_j, std::size_t n, double dd,
                         double rho2, std::uint32_t* members) {
  const double limit = rho2 * dd;
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a2 = d_i[k];
    const double ad = ((a2 + dd) - d_j[k]) * 0.5;
    const double r = a2 * dd - ad * ad;
    if (r <= limit) members[count++] = static_cast<std::uint32_t>(k);
  }
  return count;
}

void accumulate_outer(double* h, const double* diff, std::size_t p) {
  for (std::size_t a = 0; a < p; ++a) {
    const double da = diff[a];
    double* row = h + a * p;
    for (std::size_t b = 0; b < p; ++b) row[b] = row[b] + da * diff[b];
  }
}

}  // namespace contour::simd::scalar
