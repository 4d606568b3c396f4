#pragma once

#include "nematic/kernels.hpp"

namespace nematic::simd::detail {

KernelTable make_scalar() noexcept;
#if defined(NEMATIC_HAVE_AVX2)
KernelTable make_avx2() noexcept;
#endif
#if defined(NEMATIC_HAVE_NEON)
KernelTable make_neon() noexcept;
#endif

inline double combine_lanes(const double lanes[4]) noexcept {
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace nematic::simd::detail
