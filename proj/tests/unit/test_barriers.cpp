#include <doctest.h>

#include <cmath>
#include <random>

#include "nematic/barriers.hpp"
#include "nematic/radial.hpp"
#include "support.hpp"

using namespace nematic;
using namespace nematic::barriers;
using testing::pi;

namespace {

// The angle operator applied to a barrier by central differences of eval().
double residual_fd(const BarrierSpec& b, const LeslieCoefficients& c, double r, double t, double h) {
    const double f = eval(b, r, t);
    const double ft = (eval(b, r, t + h) - eval(b, r, t - h)) / (2 * h);
    const double fr = (eval(b, r + h, t) - eval(b, r - h, t)) / (2 * h);
    const double frr = (eval(b, r + h, t) - 2 * f + eval(b, r - h, t)) / (h * h);
    return c.lambda1() * (ft + r * fr) - frr - fr / r + std::sin(2 * f) / (2 * r * r) +
           3 * c.lambda2() * std::sin(f) * std::cos(f);
}

}  // namespace

TEST_CASE("beta clock") {
    const BetaClock clock(1e-3);
    CHECK(clock.beta(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(clock.blowup_time() == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(clock.beta(0.15) == doctest::Approx(1.25e-4).epsilon(1e-12));
    CHECK_THROWS_AS((void)clock.beta(clock.blowup_time()), ClockExpired);
    CHECK_THROWS_AS((void)clock.beta(0.31), ClockExpired);
    CHECK_THROWS(BetaClock(0.0));
    double prev = clock.beta(0.0);
    for (double t = 0.001; t < 0.3; t += 0.001) {
        const double b = clock.beta(t);
        REQUIRE(b > 0.0);
        REQUIRE(b < prev);
        prev = b;
    }
    CHECK(clock.beta(0.3 - 1e-9) < 1e-25);
}

TEST_CASE("beta solves beta' = -beta^(2/3)") {
    for (double beta0 : {1e-3, 0.05, 0.5}) {
        const BetaClock clock(beta0);
        const double h = 1e-5;
        for (double frac : {0.0, 0.2, 0.5, 0.8}) {
            const double t = frac * clock.blowup_time() + h;
            const double d = (clock.beta(t + h) - clock.beta(t - h)) / (2 * h);
            CHECK(std::abs(d + std::pow(clock.beta(t), 2.0 / 3.0)) <= 1e-10);
            CHECK(clock.beta_prime(t) == doctest::Approx(-std::pow(clock.beta(t), 2.0 / 3.0)).epsilon(1e-13));
        }
    }
}

TEST_CASE("barrier values") {
    const auto c0 = LeslieCoefficients::from_lambdas(1.0, 0.0);
    const auto super = BarrierSpec::supersolution(1.0, c0);
    CHECK(super.b == 0.0);
    CHECK(eval(super, 1.0, 0.0) == doctest::Approx(pi / 2));
    CHECK(eval(BarrierSpec::subsolution(1.0, c0), 1.0, 0.0) == doctest::Approx(-pi / 2));
    const auto c = LeslieCoefficients::from_lambdas(2.0, -0.6);
    CHECK(BarrierSpec::supersolution(0.3, c).b == doctest::Approx(0.9));
    CHECK_THROWS_AS(BarrierSpec::supersolution(0.0, c), InvalidBarrier);

    const auto eta = BarrierSpec::eta(1e-3, c0);
    const BetaClock clock(1e-3);
    for (double t : {0.0, 0.1, 0.2, 0.29}) {
        CHECK(eval_r(eta, 0.0, t) == doctest::Approx(2.0 / clock.beta(t)).epsilon(1e-12));
        CHECK(eval(eta, 1.0, t) < pi);
    }
    CHECK(eval_r(eta, 0.0, 0.299) > 1e9);
    CHECK_THROWS_AS(eval(eta, 0.5, clock.blowup_time()), ClockExpired);
}

TEST_CASE("eta construction enforces the beta0 constraint") {
    const auto c = LeslieCoefficients::from_lambdas(1.0, 0.5);
    const double limit = eta_beta0_limit(c);
    CHECK(limit == doctest::Approx(std::pow(1.0 / 2.5, 3)));
    CHECK_NOTHROW(BarrierSpec::eta(0.99 * limit, c));
    CHECK_THROWS_AS(BarrierSpec::eta(limit, c), InvalidBarrier);
    CHECK_THROWS_AS(BarrierSpec::eta(0.0, c), InvalidBarrier);
    CHECK_NOTHROW(BarrierSpec::eta_unchecked(0.9));
}

TEST_CASE("supersolution residual examples") {
    const auto c = LeslieCoefficients::from_lambdas(1.0, 0.0);
    const auto super = BarrierSpec::supersolution(1.0, c);
    CHECK(residual(super, c, 0.0, 0.3) == 0.0);
    CHECK(residual(super, c, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed-form residuals match finite differences of the barriers") {
    std::mt19937_64 rng(17);
    for (int set = 0; set < 5; ++set) {
        const auto c = testing::random_coefficients(rng);
        for (auto b : {BarrierSpec::supersolution(0.7, c), BarrierSpec::subsolution(0.7, c)}) {
            for (double r : {0.1, 0.4, 0.9}) {
                for (double t : {0.1, 0.5}) {
                    const double exact = residual(b, c, r, t);
                    CHECK(residual_fd(b, c, r, t, 1e-4) == doctest::Approx(exact).epsilon(1e-5).scale(1.0));
                }
            }
        }
    }
    // eta: the closed form is the differentiated one, with -lambda1 beta'.
    const auto c = LeslieCoefficients::from_lambdas(1.0, 0.3);
    const auto eta = BarrierSpec::eta(0.05, c);
    for (double r : {0.1, 0.4, 0.9}) {
        for (double t : {0.05, 0.3, 0.6}) {
            const double exact = residual(eta, c, r, t);
            CHECK(residual_fd(eta, c, r, t, 1e-5) == doctest::Approx(exact).epsilon(1e-5).scale(1.0));
            // The printed chain differs only in the sign of the beta' term.
            const BetaClock clock(0.05);
            const double beta = clock.beta(t);
            const double flip = 2 * (2 * r / (beta * beta + r * r)) * c.lambda1() * clock.beta_prime(t);
            CHECK(eta_residual_displayed(eta, c, r, t) - exact == doctest::Approx(flip).epsilon(1e-10));
        }
    }
}

TEST_CASE("property: supersolution >= 0 and subsolution <= 0 on a 100 x 100 sample") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> cdist(0.05, 5.0);
    for (int set = 0; set < 10; ++set) {
        const auto c = testing::random_coefficients(rng);
        const double cc = cdist(rng);
        const auto super = BarrierSpec::supersolution(cc, c);
        const auto sub = BarrierSpec::subsolution(cc, c);
        for (int i = 1; i <= 100; ++i) {
            const double r = i / 100.0;
            for (int k = 0; k < 100; ++k) {
                const double t = 5.0 * k / 99.0;
                REQUIRE(residual(super, c, r, t) >= 0.0);
                REQUIRE(residual(sub, c, r, t) <= 0.0);
            }
        }
    }
}

TEST_CASE("eta: printed chain is non-positive under the constraint, the differentiated residual is positive") {
    const auto c = LeslieCoefficients::from_lambdas(1.0, 0.0);
    const auto eta = BarrierSpec::eta(1e-3, c);
    int positive = 0, samples = 0;
    for (int i = 1; i <= 100; ++i) {
        const double r = 0.01 * i;
        for (int k = 0; k < 30; ++k) {
            const double t = 0.01 * k;
            const double shown = eta_residual_displayed(eta, c, r, t);
            const double bound = eta_residual_bound(eta, c, r, t);
            REQUIRE(shown <= bound * (1 - 1e-12) + 1e-300);
            REQUIRE(bound <= 0.0);
            positive += residual(eta, c, r, t) > 0.0;
            ++samples;
        }
    }
    CHECK(positive == samples);
}

TEST_CASE("eta negative control: beta0^(1/3) near 1 breaks the printed bound") {
    const auto c = LeslieCoefficients::from_lambdas(1.0, 0.5);
    const auto eta = BarrierSpec::eta_unchecked(std::pow(0.95, 3));
    int positive = 0;
    const double t0 = BetaClock(eta.beta0).blowup_time();
    for (int i = 1; i <= 100; ++i) {
        for (int k = 0; k < 100; ++k) {
            const double r = i / 100.0, t = t0 * k / 100.0;
            positive += eta_residual_displayed(eta, c, r, t) > 0.0;
        }
    }
    CHECK(positive >= 1);
}

TEST_CASE("fit_barrier_c brackets the data at t = 0") {
    axisym::RadialGrid g(256);
    const auto s = axisym::RadialState::sample(g, [](double r) { return (pi - 0.1) * r; });
    const double c = fit_barrier_c(s);
    CHECK(c > 0.0);
    const auto coeffs = LeslieCoefficients::from_lambdas(1.0, 0.5);
    const auto super = BarrierSpec::supersolution(c, coeffs);
    const auto sub = BarrierSpec::subsolution(c, coeffs);
    for (int i = 0; i <= 256; ++i) {
        CHECK(eval(super, g.r(i), 0.0) >= s.phi[static_cast<std::size_t>(i)]);
        CHECK(eval(sub, g.r(i), 0.0) <= s.phi[static_cast<std::size_t>(i)]);
    }
    const auto at_pi = axisym::RadialState::sample(g, [](double r) { return pi * r; });
    CHECK_THROWS_AS(fit_barrier_c(at_pi), InvalidBarrier);
}

TEST_CASE("ordering holds along a global run") {
    axisym::RadialGrid g(128);
    const auto coeffs = LeslieCoefficients::from_lambdas(1.0, -0.5);
    const auto s0 = axisym::RadialState::sample(g, [](double r) { return (pi - 0.1) * r; });
    auto p = axisym::SolverParams::defaults(axisym::Scheme::semi_implicit, g, 1.0, 1.0);
    const auto tr = axisym::simulate(s0, coeffs, p, 50);
    const double c = fit_barrier_c(s0);
    const auto rep = check_ordering(BarrierSpec::subsolution(c, coeffs), tr, BarrierSpec::supersolution(c, coeffs));
    CHECK(rep.passed);
    CHECK(rep.snapshots_checked == tr.snapshots.size());
    CHECK(rep.tolerance == doctest::Approx(10 * (g.dr() * g.dr() + p.dt)));
    CHECK(rep.upper.worst <= rep.tolerance);
}

TEST_CASE("a run started on the supersolution falls below it") {
    axisym::RadialGrid g(128);
    const auto coeffs = LeslieCoefficients::from_lambdas(1.0, 0.0);
    const auto super = BarrierSpec::supersolution(0.5, coeffs);
    const auto s0 = axisym::RadialState::sample(g, [&](double r) { return eval(super, r, 0.0); });
    auto p = axisym::SolverParams::defaults(axisym::Scheme::semi_implicit, g, 1.0, 0.5);
    const auto tr = axisym::simulate(s0, coeffs, p, 100);
    const auto rep = check_ordering(BarrierSpec::subsolution(0.5, coeffs), tr, super);
    CHECK(rep.passed);
    CHECK(rep.upper.worst == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    const auto& last = tr.snapshots.back();
    for (int i = 1; i < 128; ++i) CHECK(last.phi[static_cast<std::size_t>(i)] < eval(super, g.r(i), last.t));
}

TEST_CASE("misconfigured ordering is an error, not a failed comparison") {
    axisym::RadialGrid g(64);
    const auto coeffs = LeslieCoefficients::from_lambdas(1.0, 0.0);
    const auto s0 = axisym::RadialState::sample(g, [](double r) { return 3.0 * r; });
    auto p = axisym::SolverParams::defaults(axisym::Scheme::semi_implicit, g, 1.0, 0.01);
    const auto tr = axisym::simulate(s0, coeffs, p, 10);
    // c = 10 gives super(1) = 0.2 < 3 at t = 0.
    CHECK_THROWS_AS(check_ordering(BarrierSpec::subsolution(10.0, coeffs), tr,
                                   BarrierSpec::supersolution(10.0, coeffs)),
                    HarnessMisconfigured);
}

TEST_CASE("eta stays below the blow-up data, which sits above pi at r = 1") {
    const auto coeffs = LeslieCoefficients::from_lambdas(1.0, 0.0);
    const double beta0 = 1e-2;
    axisym::RadialGrid g(512);
    const auto eta = BarrierSpec::eta(beta0, coeffs);
    const auto s0 = axisym::RadialState::sample(g, [&](double r) {
        return 2 * std::atan(r / beta0) + (1.05 * pi - 2 * std::atan(1 / beta0)) * r;
    });
    CHECK(s0.outer_value() == doctest::Approx(1.05 * pi));
    for (double t = 0.0; t < BetaClock(beta0).blowup_time(); t += 0.01) CHECK(eval(eta, 1.0, t) <= pi);
    auto p = axisym::SolverParams::defaults(axisym::Scheme::semi_implicit, g, 1.0, 0.05);
    p.dt = 1e-5;
    const auto tr = axisym::simulate(s0, coeffs, p, 500);
    const auto rep = check_lower(eta, tr);
    CHECK(rep.passed);
    CHECK_FALSE(rep.upper_kind.has_value());
}
