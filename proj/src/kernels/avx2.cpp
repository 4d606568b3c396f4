#include <immintrin.h>

#include "detail.hpp"

namespace nematic::simd::detail {
namespace {

void stencil3(const double* lo, const double* di, const double* up, const double* x, double* out,
              std::size_t m) {
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(lo + i), _mm256_loadu_pd(x + i));
        const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(di + i), _mm256_loadu_pd(x + i + 1));
        const __m256d c = _mm256_mul_pd(_mm256_loadu_pd(up + i), _mm256_loadu_pd(x + i + 2));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_add_pd(a, b), c));
    }
    for (; i < m; ++i) out[i] = (lo[i] * x[i] + di[i] * x[i + 1]) + up[i] * x[i + 2];
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (; i < n; ++i) lanes[i % 4] += a[i] * b[i];
    return combine_lanes(lanes);
}

double weighted_sum_squares(const double* w, const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(xv, xv)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (; i < n; ++i) lanes[i % 4] += w[i] * (x[i] * x[i]);
    return combine_lanes(lanes);
}

}  // namespace

KernelTable make_avx2() noexcept {
    return {Isa::avx2, &stencil3, &dot, &weighted_sum_squares};
}

}  // namespace nematic::simd::detail
