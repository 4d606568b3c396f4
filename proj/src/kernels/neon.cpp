#include <arm_neon.h>

#include "detail.hpp"

namespace nematic::simd::detail {
namespace {

void stencil3(const double* lo, const double* di, const double* up, const double* x, double* out,
              std::size_t m) {
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        const float64x2_t a = vmulq_f64(vld1q_f64(lo + i), vld1q_f64(x + i));
        const float64x2_t b = vmulq_f64(vld1q_f64(di + i), vld1q_f64(x + i + 1));
        const float64x2_t c = vmulq_f64(vld1q_f64(up + i), vld1q_f64(x + i + 2));
        vst1q_f64(out + i, vaddq_f64(vaddq_f64(a, b), c));
    }
    for (; i < m; ++i) out[i] = (lo[i] * x[i] + di[i] * x[i + 1]) + up[i] * x[i + 2];
}

// Two q-registers hold lanes {0,1} and {2,3} of the shared four-lane order.
double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double lanes[4];
    vst1q_f64(lanes, acc01);
    vst1q_f64(lanes + 2, acc23);
    for (; i < n; ++i) lanes[i % 4] += a[i] * b[i];
    return combine_lanes(lanes);
}

double weighted_sum_squares(const double* w, const double* x, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float64x2_t x01 = vld1q_f64(x + i);
        const float64x2_t x23 = vld1q_f64(x + i + 2);
        acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(w + i), vmulq_f64(x01, x01)));
        acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(w + i + 2), vmulq_f64(x23, x23)));
    }
    double lanes[4];
    vst1q_f64(lanes, acc01);
    vst1q_f64(lanes + 2, acc23);
    for (; i < n; ++i) lanes[i % 4] += w[i] * (x[i] * x[i]);
    return combine_lanes(lanes);
}

}  // namespace

KernelTable make_neon() noexcept {
    return {Isa::neon, &stencil3, &dot, &weighted_sum_squares};
}

}  // namespace nematic::simd::detail
