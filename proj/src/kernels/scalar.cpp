#include "detail.hpp"

namespace nematic::simd::detail {
namespace {

void stencil3(const double* lo, const double* di, const double* up, const double* x, double* out,
              std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) {
        out[i] = (lo[i] * x[i] + di[i] * x[i + 1]) + up[i] * x[i + 2];
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    double lanes[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lanes[i % 4] += a[i] * b[i];
    return combine_lanes(lanes);
}

double weighted_sum_squares(const double* w, const double* x, std::size_t n) {
    double lanes[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lanes[i % 4] += w[i] * (x[i] * x[i]);
    return combine_lanes(lanes);
}

}  // namespace

KernelTable make_scalar() noexcept {
    return {Isa::scalar, &stencil3, &dot, &weighted_sum_squares};
}

}  // namespace nematic::simd::detail
