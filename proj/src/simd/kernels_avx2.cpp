// Compiled with -mavx2 (no FMA) so every lane repeats the scalar operation
// sequence exactly.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace contour::simd::avx2 {

namespace {

void squared_distances(const double* z, std::size_t n, std::size_t p, std::size_t i,
                       double* out) {
  const std::size_t vec_end = n - n % 4;
  for (std::size_t k = 0; k < vec_end; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < p; ++c) {
      const double* col = z + c * n;
      const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(col + k), _mm256_set1_pd(col[i]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    _mm256_storeu_pd(out + k, acc);
  }
  for (std::size_t k = vec_end; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      const double v = z[c * n + k] - z[c * n + i];
      acc = acc + v * v;
    }
    out[k] = acc;
  }
}

void abs_differences(const double* y, double yi, std::size_t count, double* out) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d vyi = _mm256_set1_pd(yi);
  const std::size_t vec_end = count - count % 4;
  for (std::size_t j = 0; j < vec_end; j += 4) {
    const __m256d d = _mm256_sub_pd(vyi, _mm256_loadu_pd(y + j));
    _mm256_storeu_pd(out + j, _mm256_andnot_pd(sign, d));
  }
  scalar::abs_differences(y + vec_end, yi, count - vec_end, out + vec_end);
}

std::size_t tube_members(const double* d_i, const double* d_j, std::size_t n, double dd,
                         double rho2, std::uint32_t* members) {
  const __m256d vdd = _mm256_set1_pd(dd);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d limit = _mm256_set1_pd(rho2 * dd);
  const std::size_t vec_end = n - n % 4;
  std::size_t count = 0;
  for (std::size_t k = 0; k < vec_end; k += 4) {
    const __m256d a2 = _mm256_loadu_pd(d_i + k);
    const __m256d ad =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_add_pd(a2, vdd), _mm256_loadu_pd(d_j + k)), half);
    const __m256d r = _mm256_sub_pd(_mm256_mul_pd(a2, vdd), _mm256_mul_pd(ad, ad));
    unsigned mask =
        static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(r, limit, _CMP_LE_OQ)));
    while (mask != 0) {
      const unsigned bit = static_cast<unsigned>(__builtin_ctz(mask));
      members[count++] = static_cast<std::uint32_t>(k + bit);
      mask &= mask - 1;
    }
  }
  const std::size_t tail =
      scalar::tube_members(d_i + vec_end, d_j + vec_end, n - vec_end, dd, rho2, members + count);
  for (std::size_t t = count; t < count + tail; ++t) {
    members[t] += static_cast<std::uint32_t>(vec_end);
  }
  return count + tail;
}

void accumulate_outer(double* h, const double* diff, std::size_t p) {
  const std::size_t vec_end = p - p % 4;
  for (std::size_t a = 0; a < p; ++a) {
    const __m256d da = _mm256_set1_pd(diff[a]);
    double* row = h + a * p;
    for (std::size_t b = 0; b < vec_end; b += 4) {
      const __m256d prod = _mm256_mul_pd(da, _mm256_loadu_pd(diff + b));
      _mm256_storeu_pd(row + b, _mm256_add_pd(_mm256_loadu_pd(row + b), prod));
    }
    for (std::size_t b = vec_end; b < p; ++b) row[b] = row[b] + diff[a] * diff[b];
  }
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::Avx2, &squared_distances, &abs_differences, &tube_members,
                             &accumulate_outer};
  return t;
}

}  // namespace contour::simd::avx2
