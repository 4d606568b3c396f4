#pragma once

// Data-parallel inner loops shared by the solvers. Every kernel has a scalar
// reference implementation and optional vector variants chosen at runtime.
// All variants accumulate reductions in four interleaved lanes and combine
// them as (l0 + l1) + (l2 + l3), so results agree bit for bit across ISAs.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace nematic::simd {

enum class Isa { scalar, avx2, neon };

std::string_view name(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view text) noexcept;

/// out[i] = lo[i] * x[i] + di[i] * x[i + 1] + up[i] * x[i + 2]
using Stencil3Fn = void (*)(const double* lo, const double* di, const double* up,
                            const double* x, double* out, std::size_t m);
/// sum a[i] * b[i]
using DotFn = double (*)(const double* a, const double* b, std::size_t n);
/// sum w[i] * x[i]^2
using WeightedSumSquaresFn = double (*)(const double* w, const double* x, std::size_t n);

struct KernelTable {
    Isa isa;
    Stencil3Fn stencil3;
    DotFn dot;
    WeightedSumSquaresFn weighted_sum_squares;
};

const KernelTable& scalar_kernels() noexcept;
/// Null when the ISA was not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa) noexcept;
bool supported(Isa isa) noexcept;

/// Best supported table, unless NEMATIC_SIMD=scalar|avx2|neon overrides it.
const KernelTable& active() noexcept;

/// Coefficients of a three-point operator acting on the interior of a grid
/// with m interior nodes (the operand carries m + 2 values).
struct Stencil3 {
    std::vector<double> lo;
    std::vector<double> di;
    std::vector<double> up;

    Stencil3() = default;
    explicit Stencil3(std::size_t m) : lo(m, 0.0), di(m, 0.0), up(m, 0.0) {}
    [[nodiscard]] std::size_t size() const noexcept { return di.size(); }
};

void apply(const Stencil3& op, std::span<const double> x, std::span<double> out,
           const KernelTable& k = active());
double dot(std::span<const double> a, std::span<const double> b, const KernelTable& k = active());
double weighted_sum_squares(std::span<const double> w, std::span<const double> x,
                            const KernelTable& k = active());

}  // namespace nematic::simd
