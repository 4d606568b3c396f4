#include "nematic/poiseuille.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nematic/kernels.hpp"

namespace nematic::poiseuille {

IntervalGrid::IntervalGrid(double half_length, int n_cells)
    : half_length_(half_length), n_(n_cells), dx_(0.0) {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw InvalidSetup("half length must be positive");
    }
    if (n_cells < 4) throw InvalidSetup("interval grid needs at least 4 cells");
    dx_ = 2.0 * half_length / n_cells;
    nodes_.resize(static_cast<std::size_t>(n_cells) + 1);
    for (int i = 0; i <= n_cells; ++i) nodes_[static_cast<std::size_t>(i)] = -half_length + i * dx_;
    nodes_.back() = half_length;
}

BoundaryData BoundaryData::counterexample(double half_length) noexcept {
    return {2.0 * half_length, -2.0 * half_length, 0.0, 0.0, 1.0};
}

PoiseuilleState::PoiseuilleState(IntervalGrid g, std::vector<double> w0, std::vector<double> phi0,
                                 double a_, BoundaryData bc, double v_left0, double t0)
    : grid(std::move(g)), w(std::move(w0)), phi(std::move(phi0)), t(t0), a(a_), boundary(bc),
      v_left(v_left0) {
    const auto size = grid.nodes().size();
    if (w.size() != size || phi.size() != size) throw InvalidSetup("poiseuille state: size mismatch");
    for (std::size_t i = 0; i < size; ++i) {
        if (!std::isfinite(w[i]) || !std::isfinite(phi[i])) {
            throw InvalidSetup("poiseuille state: non-finite value");
        }
    }
    impose_boundary();
}

void PoiseuilleState::impose_boundary() {
    w.front() = boundary.w_left;
    w.back() = boundary.w_right;
    phi.front() = boundary.phi_left + boundary.phi_rate * t;
    phi.back() = boundary.phi_right + boundary.phi_rate * t;
}

double max_g(const LeslieCoefficients& c) {
    // With u = cos(2 phi): g = mu1 (1 - u^2) / 4 + A + B u + mu4 / 2, a quadratic on [-1, 1].
    const double a = c.mu5 - c.mu2;
    const double b = c.mu3 + c.mu6;
    auto g_of_u = [&](double u) {
        return 0.25 * c.mu1 * (1.0 - u * u) + 0.25 * (a + b) + 0.25 * (b - a) * u + 0.5 * c.mu4;
    };
    double best = std::max(g_of_u(-1.0), g_of_u(1.0));
    if (c.mu1 > 0.0) {
        const double u_star = (b - a) / (2.0 * c.mu1);
        if (u_star > -1.0 && u_star < 1.0) best = std::max(best, g_of_u(u_star));
    }
    return best;
}

double stable_dt(const LeslieCoefficients& c, double dx) {
    const double gm = max_g(c);
    if (!(gm > 0.0)) throw InvalidSetup("g(phi) must be positive somewhere for a stable step");
    return 0.25 * dx * dx * std::min(c.lambda1(), 1.0 / gm);
}

namespace {

simd::Stencil3 second_difference(const IntervalGrid& grid) {
    const auto m = static_cast<std::size_t>(grid.n_cells() - 1);
    simd::Stencil3 op(m);
    const double inv = 1.0 / (grid.dx() * grid.dx());
    std::fill(op.lo.begin(), op.lo.end(), inv);
    std::fill(op.di.begin(), op.di.end(), -2.0 * inv);
    std::fill(op.up.begin(), op.up.end(), inv);
    return op;
}

simd::Stencil3 central_difference(const IntervalGrid& grid) {
    const auto m = static_cast<std::size_t>(grid.n_cells() - 1);
    simd::Stencil3 op(m);
    const double inv = 1.0 / (2.0 * grid.dx());
    std::fill(op.lo.begin(), op.lo.end(), -inv);
    std::fill(op.up.begin(), op.up.end(), inv);
    return op;
}

// First derivative at every node, one-sided second order at the ends.
std::vector<double> nodal_derivative(const IntervalGrid& grid, std::span<const double> f) {
    const std::size_t n = f.size() - 1;
    std::vector<double> d(f.size());
    simd::apply(central_difference(grid), f, std::span<double>(d).subspan(1, n - 1));
    const double dx = grid.dx();
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * dx);
    return d;
}

void require_finite(const PoiseuilleState& s) {
    for (std::size_t i = 0; i < s.w.size(); ++i) {
        if (!std::isfinite(s.w[i]) || !std::isfinite(s.phi[i])) {
            std::ostringstream os;
            os << "poiseuille: non-finite field at t = " << s.t;
            throw StepHalt(os.str());
        }
    }
}

void check_dt(const LeslieCoefficients& c, const IntervalGrid& grid, double dt) {
    const double bound = stable_dt(c, grid.dx());
    if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "poiseuille: dt must lie in (0, " << bound << "], got " << dt;
        throw InvalidSetup(os.str());
    }
}

// phi_t at interior nodes written into out[1..n-1]; ends take the boundary rate.
void fill_phi_rate(const PoiseuilleState& s, const LeslieCoefficients& c, std::vector<double>& out) {
    const std::size_t n = s.phi.size() - 1;
    out.assign(n + 1, s.boundary.phi_rate);
    std::vector<double> phi_xx(n - 1);
    std::vector<double> w_x(n - 1);
    simd::apply(second_difference(s.grid), s.phi, phi_xx);
    simd::apply(central_difference(s.grid), s.w, w_x);
    const double l1 = c.lambda1();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        out[k + 1] = (phi_xx[k] - h_coeff(c, s.phi[k + 1]) * w_x[k]) / l1;
    }
}

// Flux F = g(phi) w_x + h(phi) phi_t at the n midpoints.
std::vector<double> midpoint_flux(const PoiseuilleState& s, const LeslieCoefficients& c,
                                  std::span<const double> phi_t) {
    const std::size_t n = s.phi.size() - 1;
    const double dx = s.grid.dx();
    std::vector<double> flux(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mid = 0.5 * (s.phi[i] + s.phi[i + 1]);
        flux[i] = g_coeff(c, mid) * (s.w[i + 1] - s.w[i]) / dx +
                  h_coeff(c, mid) * 0.5 * (phi_t[i] + phi_t[i + 1]);
    }
    return flux;
}

}  // namespace

std::vector<double> phi_rate(const PoiseuilleState& s, const LeslieCoefficients& c) {
    std::vector<double> out;
    fill_phi_rate(s, c, out);
    return out;
}

PoiseuilleState step_general(const PoiseuilleState& state, const LeslieCoefficients& c, double dt) {
    check_dt(c, state.grid, dt);
    std::vector<double> phi_t;
    fill_phi_rate(state, c, phi_t);
    const auto flux = midpoint_flux(state, c, phi_t);
    const std::size_t n = state.phi.size() - 1;
    const double dx = state.grid.dx();

    PoiseuilleState next = state;
    for (std::size_t i = 1; i < n; ++i) {
        next.w[i] += dt * (-state.a + (flux[i] - flux[i - 1]) / dx);
        next.phi[i] += dt * phi_t[i];
    }
    // Second-order extrapolation of F to x = -L.
    const double flux_left = n > 1 ? 1.5 * flux[0] - 0.5 * flux[1] : flux[0];
    next.v_left += dt * flux_left;
    next.t += dt;
    next.impose_boundary();
    require_finite(next);
    return next;
}

PoiseuilleState step_simplified(const PoiseuilleState& state, double dt) {
    const std::size_t n = state.phi.size() - 1;
    const double dx = state.grid.dx();
    const auto& w = state.w;
    const auto& phi = state.phi;

    // 2 phi_t = phi_xx - w_x
    std::vector<double> phi_t(n + 1, state.boundary.phi_rate);
    for (std::size_t i = 1; i < n; ++i) {
        const double phi_xx = (phi[i - 1] - 2.0 * phi[i] + phi[i + 1]) / (dx * dx);
        const double w_x = (w[i + 1] - w[i - 1]) / (2.0 * dx);
        phi_t[i] = (phi_xx - w_x) / 2.0;
    }
    // w_t = (2 w_x + phi_t)_x
    std::vector<double> flux(n);
    for (std::size_t i = 0; i < n; ++i) {
        flux[i] = 2.0 * (w[i + 1] - w[i]) / dx + 0.5 * (phi_t[i] + phi_t[i + 1]);
    }
    PoiseuilleState next = state;
    for (std::size_t i = 1; i < n; ++i) {
        next.w[i] = w[i] + dt * (-state.a + (flux[i] - flux[i - 1]) / dx);
        next.phi[i] = phi[i] + dt * phi_t[i];
    }
    next.v_left += dt * (n > 1 ? 1.5 * flux[0] - 0.5 * flux[1] : flux[0]);
    next.t += dt;
    next.impose_boundary();
    require_finite(next);
    return next;
}

std::vector<double> v_potential(const PoiseuilleState& state) {
    std::vector<double> v(state.w.size());
    v[0] = state.v_left;
    const double dx = state.grid.dx();
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = v[i - 1] + 0.5 * dx * (state.w[i - 1] + state.w[i]);
    return v;
}

long long steps_per_snapshot(double dt, double span, int snapshots) {
    return std::max(1LL, static_cast<long long>(std::ceil(span / (dt * snapshots) - 1e-9)));
}

double effective_dt(double dt, double span, int snapshots) {
    return span / static_cast<double>(steps_per_snapshot(dt, span, snapshots) * snapshots);
}

std::vector<PoiseuilleState> run(const PoiseuilleState& initial, const LeslieCoefficients& c,
                                 double dt, double t_end, int snapshots) {
    if (snapshots < 1) throw InvalidSetup("run needs at least one snapshot interval");
    if (!(t_end > initial.t)) throw InvalidSetup("t_end must exceed the initial time");
    const long long stride = steps_per_snapshot(dt, t_end - initial.t, snapshots);
    const long long steps = stride * snapshots;
    const double dt_eff = effective_dt(dt, t_end - initial.t, snapshots);
    check_dt(c, initial.grid, dt_eff);

    std::vector<PoiseuilleState> history;
    history.reserve(static_cast<std::size_t>(snapshots) + 1);
    history.push_back(initial);
    PoiseuilleState state = initial;
    for (long long s = 1; s <= steps; ++s) {
        state = step_general(state, c, dt_eff);
        if (s % stride == 0) {
            if (s == steps) state.t = t_end;
            history.push_back(state);
        }
    }
    return history;
}

PoiseuilleState counterexample_initial(double half_length, int n_cells) {
    IntervalGrid grid(half_length, n_cells);
    const auto nodes = grid.nodes();
    std::vector<double> w0(nodes.size());
    std::vector<double> phi0(nodes.size(), 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i) w0[i] = -2.0 * nodes[i];
    // v0 = -x^2
    return PoiseuilleState(grid, std::move(w0), std::move(phi0), 0.0,
                           BoundaryData::counterexample(half_length), -half_length * half_length);
}

CounterexampleReport counterexample_report(std::span<const PoiseuilleState> history, double dt) {
    if (history.size() < 3) throw InvalidSetup("counterexample report needs at least 3 snapshots");
    const auto& first = history.front();
    const auto& last = history.back();
    const auto nodes = last.grid.nodes();

    CounterexampleReport rep;
    rep.half_length = last.grid.half_length();
    rep.n_cells = last.grid.n_cells();
    rep.t_end = last.t;
    rep.dt = dt;
    rep.max_phi_initial = *std::max_element(first.phi.begin(), first.phi.end());
    rep.max_phi_final = *std::max_element(last.phi.begin(), last.phi.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        rep.phi_error = std::max(rep.phi_error, std::abs(last.phi[i] - last.t));
        rep.w_error = std::max(rep.w_error, std::abs(last.w[i] + 2.0 * nodes[i]));
    }
    rep.heat_residual = heat_reduction_check(history);
    rep.maximum_principle_violated = rep.max_phi_final > rep.max_phi_initial;
    return rep;
}

CounterexampleReport counterexample_run(double half_length, int n_cells, double t_end, int snapshots) {
    const auto c = LeslieCoefficients::simplified();
    const auto initial = counterexample_initial(half_length, n_cells);
    const double dt = stable_dt(c, initial.grid.dx());
    const auto history = run(initial, c, dt, t_end, snapshots);
    return counterexample_report(history, effective_dt(dt, t_end - initial.t, snapshots));
}

double heat_reduction_check(std::span<const PoiseuilleState> history) {
    if (history.size() < 3) throw InvalidSetup("heat reduction check needs at least 3 snapshots");
    const auto& grid = history.front().grid;
    const auto d2 = second_difference(grid);
    const std::size_t m = d2.size();
    std::vector<double> s_now;
    std::vector<double> s_next;
    std::vector<double> lap(m);
    auto combine = [](const PoiseuilleState& st) {
        auto v = v_potential(st);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += st.phi[i];
        return v;
    };
    double worst = 0.0;
    s_now = combine(history.front());
    for (std::size_t k = 0; k + 1 < history.size(); ++k) {
        if (!(history[k + 1].grid == grid)) throw InvalidSetup("heat reduction check: grid changed");
        const double dt = history[k + 1].t - history[k].t;
        if (!(dt > 0.0)) throw InvalidSetup("heat reduction check: snapshot times must increase");
        s_next = combine(history[k + 1]);
        simd::apply(d2, s_now, lap);
        for (std::size_t i = 0; i < m; ++i) {
            worst = std::max(worst, std::abs((s_next[i + 1] - s_now[i + 1]) / dt - lap[i]));
        }
        std::swap(s_now, s_next);
    }
    return worst;
}

namespace {

std::vector<double> trapezoid_weights(const IntervalGrid& grid) {
    std::vector<double> w(grid.nodes().size(), grid.dx());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

}  // namespace

double discrete_energy(const PoiseuilleState& s) {
    const auto trap = trapezoid_weights(s.grid);
    const auto phi_x = nodal_derivative(s.grid, s.phi);
    return 0.5 * (simd::weighted_sum_squares(trap, s.w) + simd::weighted_sum_squares(trap, phi_x));
}

double discrete_dissipation(const PoiseuilleState& s, const LeslieCoefficients& c) {
    const auto trap = trapezoid_weights(s.grid);
    const auto w_x = nodal_derivative(s.grid, s.w);
    const auto phi_t = phi_rate(s, c);
    std::vector<double> sum(w_x.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = w_x[i] + phi_t[i];
    return simd::weighted_sum_squares(trap, w_x) + simd::weighted_sum_squares(trap, phi_t) +
           simd::weighted_sum_squares(trap, sum);
}

EnergyIdentity energy_identity_residual(std::span<const PoiseuilleState> history,
                                        const LeslieCoefficients& c) {
    if (!(c == LeslieCoefficients::simplified())) {
        throw InvalidSetup("energy identity holds for the simplified coefficients only");
    }
    if (history.size() < 3) throw InvalidSetup("energy identity needs at least 3 snapshots");
    EnergyIdentity out;
    double flux_scale = 0.0;
    for (const auto& s : history) {
        out.times.push_back(s.t);
        out.energy.push_back(discrete_energy(s));
        out.dissipation.push_back(discrete_dissipation(s, c));
        // Boundary energy flux [w F + phi_x phi_t] at both ends.
        const auto phi_t = phi_rate(s, c);
        const auto phi_x = nodal_derivative(s.grid, s.phi);
        const auto w_x = nodal_derivative(s.grid, s.w);
        for (std::size_t i : {std::size_t{0}, s.w.size() - 1}) {
            const double flux = g_coeff(c, s.phi[i]) * w_x[i] + h_coeff(c, s.phi[i]) * phi_t[i];
            flux_scale = std::max(flux_scale, std::abs(s.w[i] * flux + phi_x[i] * phi_t[i]));
        }
    }
    for (std::size_t k = 0; k + 1 < history.size(); ++k) {
        const double dt = out.times[k + 1] - out.times[k];
        if (!(dt > 0.0)) throw InvalidSetup("energy identity: snapshot times must increase");
        const double r = (out.energy[k + 1] - out.energy[k]) / dt +
                         0.5 * (out.dissipation[k] + out.dissipation[k + 1]);
        out.residual = std::max(out.residual, std::abs(r));
    }
    out.boundary_flux_warning = flux_scale > 1e-8;
    return out;
}

}  // namespace nematic::poiseuille
