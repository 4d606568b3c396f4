#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nematic/poiseuille.hpp"
#include "support.hpp"

using namespace nematic;
using namespace nematic::poiseuille;

namespace {

// w0 = x exp(-x^2), phi0 = 0.3 exp(-x^2): decays well before |x| = 5.
PoiseuilleState bump(double half_length, int n, double a = 0.0) {
    IntervalGrid g(half_length, n);
    const auto x = g.nodes();
    std::vector<double> w(x.size()), phi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        w[i] = x[i] * std::exp(-x[i] * x[i]);
        phi[i] = 0.3 * std::exp(-x[i] * x[i]);
    }
    return PoiseuilleState(g, std::move(w), std::move(phi), a, BoundaryData::homogeneous());
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("interval grid") {
    IntervalGrid g(5.0, 200);
    CHECK(g.dx() == doctest::Approx(0.05));
    CHECK(g.nodes().front() == -5.0);
    CHECK(g.nodes().back() == 5.0);
    CHECK(g.nodes()[100] == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(IntervalGrid(5.0, 3), InvalidSetup);
    CHECK_THROWS_AS(IntervalGrid(0.0, 10), InvalidSetup);
}

TEST_CASE("state construction imposes the boundary and rejects bad data") {
    IntervalGrid g(1.0, 8);
    PoiseuilleState s(g, std::vector<double>(9, 1.0), std::vector<double>(9, 1.0), 0.0,
                      BoundaryData::counterexample(1.0), 0.0, 0.5);
    CHECK(s.w.front() == 2.0);
    CHECK(s.w.back() == -2.0);
    CHECK(s.phi.front() == 0.5);
    CHECK(s.phi.back() == 0.5);
    CHECK_THROWS_AS(PoiseuilleState(g, std::vector<double>(8), std::vector<double>(9), 0.0, {}), InvalidSetup);
    std::vector<double> bad(9, 0.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(PoiseuilleState(g, bad, std::vector<double>(9), 0.0, {}), InvalidSetup);
}

TEST_CASE("max_g and the stable step") {
    const auto simple = LeslieCoefficients::simplified();
    for (double phi = -3.0; phi <= 3.0; phi += 0.1) {
        CHECK(g_coeff(simple, phi) == 2.0);
        CHECK(h_coeff(simple, phi) == 1.0);
    }
    CHECK(max_g(simple) == doctest::Approx(2.0));
    CHECK(stable_dt(simple, 0.1) == doctest::Approx(0.25 * 0.01 * 0.5));

    std::mt19937_64 rng(5);
    for (int set = 0; set < 100; ++set) {
        const auto c = testing::random_coefficients(rng);
        double sampled = -1e300;
        for (int k = 0; k <= 20000; ++k) sampled = std::max(sampled, g_coeff(c, testing::pi * k / 20000.0));
        REQUIRE(max_g(c) >= sampled - 1e-12);
        REQUIRE(max_g(c) <= sampled + 1e-6);
    }
}

TEST_CASE("dt above the stability bound is refused") {
    const auto c = LeslieCoefficients::simplified();
    const auto s = bump(5.0, 100);
    const double bound = stable_dt(c, s.grid.dx());
    CHECK_NOTHROW(step_general(s, c, bound));
    CHECK_THROWS_AS(step_general(s, c, 1.01 * bound), InvalidSetup);
    CHECK_THROWS_AS(step_general(s, c, 0.0), InvalidSetup);
    CHECK_THROWS_AS(run(s, c, 1.0, 0.1, 10), InvalidSetup);
}

TEST_CASE("zero data with a = 0 is an equilibrium") {
    const auto c = LeslieCoefficients::simplified();
    IntervalGrid g(5.0, 64);
    PoiseuilleState s(g, std::vector<double>(65, 0.0), std::vector<double>(65, 0.0), 0.0, {});
    const auto h = run(s, c, stable_dt(c, g.dx()), 0.1, 10);
    for (const auto& st : h) {
        CHECK(std::all_of(st.w.begin(), st.w.end(), [](double v) { return v == 0.0; }));
        CHECK(std::all_of(st.phi.begin(), st.phi.end(), [](double v) { return v == 0.0; }));
    }
    CHECK(heat_reduction_check(h) == 0.0);
    const auto id = energy_identity_residual(h, c);
    CHECK(id.residual == 0.0);
    CHECK_FALSE(id.boundary_flux_warning);
}

TEST_CASE("general stepper agrees with the hard-coded one on the simplified set") {
    const auto c = LeslieCoefficients::simplified();
    for (double a : {0.0, 0.7}) {
        auto g = bump(5.0, 256, a);
        auto s = g;
        const double dt = stable_dt(c, g.grid.dx());
        for (int k = 0; k < 200; ++k) {
            g = step_general(g, c, dt);
            s = step_simplified(s, dt);
        }
        CHECK(max_abs_diff(g.w, s.w) <= 1e-12);
        CHECK(max_abs_diff(g.phi, s.phi) <= 1e-12);
        CHECK(g.v_left == doctest::Approx(s.v_left).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("snapshot schedule lands on t_end") {
    CHECK(steps_per_snapshot(1e-3, 1.0, 100) == 10);
    CHECK(steps_per_snapshot(3e-3, 1.0, 100) == 4);
    CHECK(steps_per_snapshot(1.0, 1.0, 100) == 1);
    CHECK(effective_dt(3e-3, 1.0, 100) == doctest::Approx(2.5e-3));
    const auto c = LeslieCoefficients::simplified();
    const auto s = bump(5.0, 64);
    const auto h = run(s, c, stable_dt(c, s.grid.dx()), 0.3, 7);
    REQUIRE(h.size() == 8);
    CHECK(h.back().t == 0.3);
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k].t == doctest::Approx(0.3 * k / 7.0).epsilon(1e-12));
}

TEST_CASE("the pair w = -2x, phi = t is reproduced and breaks the maximum principle") {
    const auto rep = counterexample_run();
    CHECK(rep.half_length == 5.0);
    CHECK(rep.n_cells == 200);
    CHECK(rep.t_end == 1.0);
    CHECK(rep.phi_error <= 1e-10);
    CHECK(rep.w_error <= 1e-10);
    CHECK(rep.heat_residual <= 1e-8);
    CHECK(rep.max_phi_initial == 0.0);
    CHECK(rep.max_phi_final == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.maximum_principle_violated);

    // The pair needs 2 h(0) = lambda1; a generic coefficient set drifts away.
    std::mt19937_64 rng(2);
    const auto c = testing::random_coefficients(rng);
    REQUIRE(std::abs(2.0 * h_coeff(c, 0.0) - c.lambda1()) > 0.1);
    const auto s0 = counterexample_initial(5.0, 100);
    const auto h = run(s0, c, stable_dt(c, s0.grid.dx()), 0.5, 10);
    CHECK(counterexample_report(h, 0.0).phi_error > 1e-3);

    CHECK_THROWS_AS(counterexample_report(std::span(h).first(2), 0.0), InvalidSetup);
}

TEST_CASE("v recovered from w is second order") {
    double prev = 0.0;
    for (int n : {64, 128, 256}) {
        IntervalGrid g(2.0, n);
        const auto x = g.nodes();
        std::vector<double> w(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) w[i] = std::cos(x[i]);
        PoiseuilleState s(g, w, std::vector<double>(x.size(), 0.0), 0.0,
                          BoundaryData{w.front(), w.back(), 0.0, 0.0, 0.0}, std::sin(-2.0));
        const auto v = v_potential(s);
        double err = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(v[i] - std::sin(x[i])));
        if (prev > 0.0) CHECK(prev / err >= 3.9);
        prev = err;
    }
}

TEST_CASE("heat reduction: v + phi solves the heat equation up to discretisation error") {
    const auto c = LeslieCoefficients::simplified();
    // Grid halves and the snapshot spacing quarters, so both error terms
    // are second order in dx.
    double prev = 0.0;
    for (int k = 0; k < 2; ++k) {
        const auto s0 = bump(5.0, 200 << k);
        const auto h = run(s0, c, stable_dt(c, s0.grid.dx()), 0.1, 100 << (2 * k));
        const double res = heat_reduction_check(h);
        CHECK(res < 2.5e-3);
        if (k > 0) CHECK(prev / res >= 3.5);
        prev = res;
    }
    const auto s0 = bump(5.0, 64);
    const auto h = run(s0, c, stable_dt(c, s0.grid.dx()), 0.1, 2);
    CHECK_THROWS_AS(heat_reduction_check(std::span(h).first(2)), InvalidSetup);
}

TEST_CASE("energy identity converges under refinement") {
    const auto c = LeslieCoefficients::simplified();
    double prev = 0.0;
    for (int n : {128, 256}) {
        const auto s0 = bump(5.0, n);
        const auto h = run(s0, c, stable_dt(c, s0.grid.dx()), 0.05, 50);
        const auto id = energy_identity_residual(h, c);
        CHECK_FALSE(id.boundary_flux_warning);
        CHECK(id.times.size() == 51);
        for (std::size_t k = 1; k < id.energy.size(); ++k) CHECK(id.energy[k] < id.energy[k - 1]);
        for (double d : id.dissipation) CHECK(d >= 0.0);
        if (prev > 0.0) CHECK(prev / id.residual >= 3.5);
        prev = id.residual;
    }
}

TEST_CASE("energy identity preconditions") {
    std::mt19937_64 rng(9);
    const auto c = testing::random_coefficients(rng);
    const auto s0 = bump(5.0, 64);
    const auto h = run(s0, c, stable_dt(c, s0.grid.dx()), 0.05, 5);
    CHECK_THROWS_AS(energy_identity_residual(h, c), InvalidSetup);
    const auto simple = LeslieCoefficients::simplified();
    CHECK_THROWS_AS(energy_identity_residual(std::span(h).first(2), simple), InvalidSetup);
    // Non-zero boundary traces carry energy through the ends.
    const auto ce = counterexample_initial(5.0, 64);
    const auto hc = run(ce, simple, stable_dt(simple, ce.grid.dx()), 0.1, 5);
    CHECK(energy_identity_residual(hc, simple).boundary_flux_warning);
}
