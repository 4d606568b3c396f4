#include <cstdlib>
#include <stdexcept>
#include <string>

#include "detail.hpp"

namespace nematic::simd {

std::string_view name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

std::optional<Isa> parse_isa(std::string_view text) noexcept {
    if (text == "scalar") return Isa::scalar;
    if (text == "avx2") return Isa::avx2;
    if (text == "neon") return Isa::neon;
    return std::nullopt;
}

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table = detail::make_scalar();
    return table;
}

bool supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(NEMATIC_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(NEMATIC_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable* kernels_for(Isa isa) noexcept {
    if (!supported(isa)) return nullptr;
    switch (isa) {
        case Isa::scalar: return &scalar_kernels();
#if defined(NEMATIC_HAVE_AVX2)
        case Isa::avx2: {
            static const KernelTable table = detail::make_avx2();
            return &table;
        }
#endif
#if defined(NEMATIC_HAVE_NEON)
        case Isa::neon: {
            static const KernelTable table = detail::make_neon();
            return &table;
        }
#endif
        default: return nullptr;
    }
}

const KernelTable& active() noexcept {
    static const KernelTable& table = [] () -> const KernelTable& {
        if (const char* env = std::getenv("NEMATIC_SIMD")) {
            if (auto isa = parse_isa(env)) {
                if (const auto* k = kernels_for(*isa)) return *k;
            }
        }
        for (Isa isa : {Isa::avx2, Isa::neon}) {
            if (const auto* k = kernels_for(isa)) return *k;
        }
        return scalar_kernels();
    }();
    return table;
}

void apply(const Stencil3& op, std::span<const double> x, std::span<double> out,
           const KernelTable& k) {
    const std::size_t m = op.size();
    if (op.lo.size() != m || op.up.size() != m || x.size() != m + 2 || out.size() != m) {
        throw std::invalid_argument("stencil3: size mismatch");
    }
    k.stencil3(op.lo.data(), op.di.data(), op.up.data(), x.data(), out.data(), m);
}

double dot(std::span<const double> a, std::span<const double> b, const KernelTable& k) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    return k.dot(a.data(), b.data(), a.size());
}

double weighted_sum_squares(std::span<const double> w, std::span<const double> x,
                            const KernelTable& k) {
    if (w.size() != x.size()) throw std::invalid_argument("weighted_sum_squares: size mismatch");
    return k.weighted_sum_squares(w.data(), x.data(), w.size());
}

}  // namespace nematic::simd
