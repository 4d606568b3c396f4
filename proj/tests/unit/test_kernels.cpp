#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "nematic/kernels.hpp"

namespace simd = nematic::simd;

namespace {

std::vector<const simd::KernelTable*> vector_tables() {
    std::vector<const simd::KernelTable*> out;
    for (auto isa : {simd::Isa::avx2, simd::Isa::neon}) {
        if (const auto* t = simd::kernels_for(isa)) out.push_back(t);
    }
    return out;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

TEST_CASE("isa names round-trip") {
    for (auto isa : {simd::Isa::scalar, simd::Isa::avx2, simd::Isa::neon}) {
        CHECK(simd::parse_isa(simd::name(isa)) == isa);
    }
    CHECK_FALSE(simd::parse_isa("sse9").has_value());
    CHECK(simd::supported(simd::Isa::scalar));
    CHECK(simd::kernels_for(simd::Isa::scalar) == &simd::scalar_kernels());
    CHECK(simd::supported(simd::active().isa));
}

TEST_CASE("scalar stencil matches the definition") {
    std::mt19937_64 rng(3);
    const std::size_t m = 37;
    simd::Stencil3 op(m);
    op.lo = random_vec(rng, m);
    op.di = random_vec(rng, m);
    op.up = random_vec(rng, m);
    const auto x = random_vec(rng, m + 2);
    std::vector<double> out(m);
    simd::apply(op, x, out, simd::scalar_kernels());
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(out[i] == doctest::Approx((op.lo[i] * x[i] + op.di[i] * x[i + 1]) + op.up[i] * x[i + 2]));
    }
}

TEST_CASE("vector kernels agree with scalar bit for bit") {
    const auto tables = vector_tables();
    if (tables.empty()) {
        MESSAGE("no vector ISA on this machine; scalar only");
        return;
    }
    std::mt19937_64 rng(99);
    const auto& ref = simd::scalar_kernels();
    for (const auto* t : tables) {
        CAPTURE(simd::name(t->isa));
        for (std::size_t m = 0; m < 70; ++m) {
            CAPTURE(m);
            simd::Stencil3 op(m);
            op.lo = random_vec(rng, m);
            op.di = random_vec(rng, m);
            op.up = random_vec(rng, m);
            const auto x = random_vec(rng, m + 2);
            std::vector<double> a(m), b(m);
            simd::apply(op, x, a, ref);
            simd::apply(op, x, b, *t);
            for (std::size_t i = 0; i < m; ++i) REQUIRE(same_bits(a[i], b[i]));

            const auto u = random_vec(rng, m);
            const auto v = random_vec(rng, m);
            REQUIRE(same_bits(simd::dot(u, v, ref), simd::dot(u, v, *t)));
            REQUIRE(same_bits(simd::weighted_sum_squares(u, v, ref), simd::weighted_sum_squares(u, v, *t)));
        }
    }
}

TEST_CASE("reductions on long vectors") {
    std::mt19937_64 rng(5);
    const auto u = random_vec(rng, 100003);
    const auto v = random_vec(rng, 100003);
    long double exact = 0.0L, exact_w = 0.0L;
    for (std::size_t i = 0; i < u.size(); ++i) {
        exact += static_cast<long double>(u[i]) * v[i];
        exact_w += static_cast<long double>(u[i]) * (static_cast<long double>(v[i]) * v[i]);
    }
    CHECK(simd::dot(u, v) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-10));
    CHECK(simd::weighted_sum_squares(u, v) == doctest::Approx(static_cast<double>(exact_w)).epsilon(1e-10));
}

TEST_CASE("size mismatches are rejected") {
    simd::Stencil3 op(4);
    std::vector<double> x(5), out(4);
    CHECK_THROWS(simd::apply(op, x, out));
    std::vector<double> a(3), b(4);
    CHECK_THROWS(simd::dot(a, b));
    CHECK_THROWS(simd::weighted_sum_squares(a, b));
}
