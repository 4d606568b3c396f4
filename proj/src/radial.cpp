#include "nematic/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nematic::axisym {

RadialGrid::RadialGrid(int n_cells) : n_(n_cells), dr_(0.0) {
    if (n_cells < min_cells) {
        throw InvalidParameters("radial grid needs at least 16 cells, got " + std::to_string(n_cells));
    }
    dr_ = 1.0 / n_cells;
    nodes_.resize(static_cast<std::size_t>(n_cells) + 1);
    for (int i = 0; i <= n_cells; ++i) nodes_[static_cast<std::size_t>(i)] = i * dr_;
    nodes_.back() = 1.0;
}

RadialState::RadialState(RadialGrid g, std::vector<double> values, double t0)
    : grid(std::move(g)), phi(std::move(values)), t(t0) {
    if (phi.size() != grid.nodes().size()) throw InvalidParameters("radial state: size mismatch");
    if (!(t >= 0.0)) throw InvalidParameters("radial state: negative time");
    for (double v : phi) {
        if (!std::isfinite(v)) throw InvalidParameters("radial state: non-finite value");
    }
    phi.front() = 0.0;
}

double StaticFields::divergence_residual(double r, double z, double h) const {
    const double flux_r = ((r + h) * v(r + h) - (r - h) * v(r - h)) / (2.0 * h);
    const double w_z = (w(z + h) - w(z - h)) / (2.0 * h);
    return flux_r / r + w_z;
}

StaticFields static_fields() noexcept { return {}; }

std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::semi_implicit ? "semi_implicit" : "explicit";
}

Scheme parse_scheme(std::string_view text) {
    if (text == "semi_implicit") return Scheme::semi_implicit;
    if (text == "explicit") return Scheme::explicit_rk4;
    throw InvalidParameters("unknown scheme '" + std::string(text) + "'");
}

SolverParams SolverParams::defaults(Scheme scheme, const RadialGrid& grid, double lambda1,
                                    double t_end) {
    SolverParams p;
    p.scheme = scheme;
    p.t_end = t_end;
    p.dt = scheme == Scheme::explicit_rk4 ? std::min(0.25 * grid.dr() * grid.dr() * lambda1, 1e-5)
                                          : 1e-4;
    return p;
}

void check_params(const SolverParams& p, const RadialGrid& grid, double lambda1) {
    if (!(p.dt > 0.0) || !std::isfinite(p.dt)) throw InvalidParameters("dt must be positive");
    if (!(p.t_end > 0.0) || !std::isfinite(p.t_end)) throw InvalidParameters("t_end must be positive");
    if (!(lambda1 > 0.0)) throw InvalidParameters("lambda1 must be positive");
    if (p.scheme == Scheme::explicit_rk4) {
        const double bound = 0.25 * grid.dr() * grid.dr() * lambda1;
        if (p.dt > bound * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "explicit scheme needs dt <= 0.25 dr^2 lambda1 = " << bound << ", got " << p.dt;
            throw InvalidParameters(os.str());
        }
    }
    if (!(p.clip_guard > 0.0)) throw InvalidParameters("clip_guard must be positive");
}

RadialOperator::RadialOperator(const RadialGrid& grid, const LeslieCoefficients& c)
    : grid_(grid), lambda1_(c.lambda1()), lambda2_(c.lambda2()) {
    if (!(lambda1_ > 0.0)) throw InvalidParameters("lambda1 must be positive");
    const auto m = static_cast<std::size_t>(grid.n_cells() - 1);
    diffusion_ = simd::Stencil3(m);
    advection_ = simd::Stencil3(m);
    linear_ = simd::Stencil3(m);
    const double dr = grid.dr();
    const double inv_dr2 = 1.0 / (dr * dr);
    const double inv_2dr = 1.0 / (2.0 * dr);
    for (std::size_t k = 0; k < m; ++k) {
        const double r = grid.r(static_cast<int>(k + 1));
        diffusion_.lo[k] = (inv_dr2 - inv_2dr / r) / lambda1_;
        diffusion_.di[k] = -2.0 * inv_dr2 / lambda1_;
        diffusion_.up[k] = (inv_dr2 + inv_2dr / r) / lambda1_;
        advection_.lo[k] = r * inv_2dr;
        advection_.up[k] = -r * inv_2dr;
        linear_.lo[k] = diffusion_.lo[k] + advection_.lo[k];
        linear_.di[k] = diffusion_.di[k];
        linear_.up[k] = diffusion_.up[k] + advection_.up[k];
    }
}

namespace {

// sin(2 phi) / (2 phi), continuous at 0.
double singular_factor(double phi) noexcept {
    return std::abs(phi) < 1e-8 ? 1.0 - (2.0 / 3.0) * phi * phi : std::sin(2.0 * phi) / (2.0 * phi);
}

void require_finite(std::span<const double> v, double t) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            std::ostringstream os;
            os << "non-finite field at t = " << t;
            throw SolverHalt(os.str(), t);
        }
    }
}

}  // namespace

void rhs(const RadialOperator& op, std::span<const double> phi, std::span<double> out) {
    simd::apply(op.linear(), phi, out);
    const auto nodes = op.grid().nodes();
    const double l1 = op.lambda1();
    const double l2 = op.lambda2();
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double p = phi[k + 1];
        const double r = nodes[k + 1];
        out[k] += (-std::sin(2.0 * p) / (2.0 * r * r) - 3.0 * l2 * std::sin(p) * std::cos(p)) / l1;
    }
}

std::vector<double> rhs(const RadialState& state, const LeslieCoefficients& c) {
    RadialOperator op(state.grid, c);
    std::vector<double> out(static_cast<std::size_t>(state.grid.n_cells() - 1));
    rhs(op, state.phi, out);
    return out;
}

Stepper::Stepper(const RadialGrid& grid, const LeslieCoefficients& c, const SolverParams& p)
    : op_(grid, c), params_(p) {
    check_params(p, grid, c.lambda1());
    const auto m = static_cast<std::size_t>(grid.n_cells() - 1);
    work_a_.resize(m);
    work_b_.resize(m);
    work_c_.resize(m);
    work_d_.resize(m);
    lin_.resize(m);
    stage_.resize(grid.nodes().size());
}

void Stepper::advance(RadialState& state) {
    if (!(state.grid == op_.grid())) throw InvalidParameters("state grid does not match stepper");
    if (params_.scheme == Scheme::semi_implicit) {
        advance_semi_implicit(state, params_.dt);
    } else {
        advance_rk4(state, params_.dt);
    }
    state.t += params_.dt;
    state.phi.front() = 0.0;
    require_finite(state.phi, state.t);
}

// Crank-Nicolson on (1/lambda1)(phi_rr + phi_r / r). The damping part of
// the singular term is backward Euler; the rest is forward Euler.
void Stepper::advance_semi_implicit(RadialState& state, double dt) {
    const auto& diff = op_.diffusion();
    const auto nodes = op_.grid().nodes();
    const double l1 = op_.lambda1();
    const double l2 = op_.lambda2();
    const std::size_t m = diff.size();
    auto& phi = state.phi;

    simd::apply(diff, phi, lin_);
    simd::apply(op_.advection(), phi, work_d_);

    auto& sub = work_a_;
    auto& diag = work_b_;
    auto& sup = work_c_;
    auto& rhs_v = work_d_;
    for (std::size_t k = 0; k < m; ++k) {
        const double p = phi[k + 1];
        const double r = nodes[k + 1];
        const double s = singular_factor(p);
        const double implicit_part = std::max(s, 0.0);
        const double explicit_part = s - implicit_part;
        const double explicit_terms =
            (-explicit_part * p / (r * r) - 3.0 * l2 * std::sin(p) * std::cos(p)) / l1 + rhs_v[k];
        rhs_v[k] = p + dt * (0.5 * lin_[k] + explicit_terms);
        sub[k] = -0.5 * dt * diff.lo[k];
        diag[k] = 1.0 - 0.5 * dt * diff.di[k] + dt * implicit_part / (l1 * r * r);
        sup[k] = -0.5 * dt * diff.up[k];
    }
    rhs_v.front() -= sub.front() * phi.front();
    rhs_v.back() -= sup.back() * phi.back();

    // Thomas algorithm.
    for (std::size_t k = 1; k < m; ++k) {
        if (!(std::isfinite(diag[k - 1]) && diag[k - 1] != 0.0)) {
            throw SolverHalt("tridiagonal pivot breakdown", state.t);
        }
        const double w = sub[k] / diag[k - 1];
        diag[k] -= w * sup[k - 1];
        rhs_v[k] -= w * rhs_v[k - 1];
    }
    if (!(std::isfinite(diag[m - 1]) && diag[m - 1] != 0.0)) {
        throw SolverHalt("tridiagonal pivot breakdown", state.t);
    }
    phi[m] = rhs_v[m - 1] / diag[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) {
        phi[k + 1] = (rhs_v[k] - sup[k] * phi[k + 2]) / diag[k];
    }
}

void Stepper::advance_rk4(RadialState& state, double dt) {
    const std::size_t m = lin_.size();
    auto& phi = state.phi;
    auto& k1 = work_a_;
    auto& k2 = work_b_;
    auto& k3 = work_c_;
    auto& k4 = work_d_;
    stage_ = phi;

    rhs(op_, phi, k1);
    for (std::size_t k = 0; k < m; ++k) stage_[k + 1] = phi[k + 1] + 0.5 * dt * k1[k];
    rhs(op_, stage_, k2);
    for (std::size_t k = 0; k < m; ++k) stage_[k + 1] = phi[k + 1] + 0.5 * dt * k2[k];
    rhs(op_, stage_, k3);
    for (std::size_t k = 0; k < m; ++k) stage_[k + 1] = phi[k + 1] + dt * k3[k];
    rhs(op_, stage_, k4);
    for (std::size_t k = 0; k < m; ++k) {
        phi[k + 1] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
}

RadialState step(const RadialState& state, const LeslieCoefficients& c, const SolverParams& p) {
    Stepper stepper(state.grid, c, p);
    RadialState next = state;
    stepper.advance(next);
    return next;
}

std::vector<double> gradient(const RadialState& state) {
    const auto& phi = state.phi;
    const std::size_t n = phi.size() - 1;
    const double dr = state.grid.dr();
    std::vector<double> g(phi.size());
    g[0] = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * dr);
    for (std::size_t i = 1; i < n; ++i) g[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * dr);
    g[n] = (3.0 * phi[n] - 4.0 * phi[n - 1] + phi[n - 2]) / (2.0 * dr);
    return g;
}

namespace {

std::vector<double> trapezoid_weights(const RadialGrid& grid) {
    std::vector<double> w(grid.nodes().size(), grid.dr());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

}  // namespace

Energy energy(const RadialState& state) {
    const auto nodes = state.grid.nodes();
    const auto trap = trapezoid_weights(state.grid);
    const auto g = gradient(state);
    std::vector<double> w_grad(nodes.size());
    std::vector<double> w_sin(nodes.size());
    std::vector<double> sines(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        w_grad[i] = trap[i] * nodes[i];
        // The sin^2(phi)/r integrand vanishes at the origin.
        w_sin[i] = i == 0 ? 0.0 : trap[i] / nodes[i];
        sines[i] = std::sin(state.phi[i]);
    }
    Energy e;
    e.grad = simd::weighted_sum_squares(w_grad, g);
    e.sin = simd::weighted_sum_squares(w_sin, sines);
    e.total = e.grad + e.sin;
    return e;
}

double local_energy(const RadialState& state, double radius) {
    const double dr = state.grid.dr();
    if (!(radius >= 2.0 * dr) || radius > 1.0 + 1e-12) {
        throw InvalidParameters("local_energy: radius must lie in [2 dr, 1]");
    }
    const auto nodes = state.grid.nodes();
    const auto g = gradient(state);
    const auto last = static_cast<std::size_t>(std::min<double>(std::floor(radius / dr + 1e-12),
                                                                state.grid.n_cells()));
    std::vector<double> w(last + 1, dr);
    w.front() *= 0.5;
    w.back() *= 0.5;
    for (std::size_t i = 0; i <= last; ++i) w[i] *= nodes[i];
    double total = simd::weighted_sum_squares(w, std::span<const double>(g).first(last + 1));
    const double tail = radius - nodes[last];
    if (tail > 0.0 && last + 1 < nodes.size()) {
        const double f0 = g[last] * g[last] * nodes[last];
        const double f1 = g[last + 1] * g[last + 1] * nodes[last + 1];
        const double f_r = f0 + (f1 - f0) * tail / dr;
        total += 0.5 * tail * (f0 + f_r);
    }
    return total;
}

std::string_view to_string(HaltReason r) noexcept {
    switch (r) {
        case HaltReason::none: return "none";
        case HaltReason::non_finite: return "non_finite";
        case HaltReason::pivot_breakdown: return "pivot_breakdown";
        case HaltReason::clip_guard: return "clip_guard";
    }
    return "unknown";
}

RadialState Trace::state(std::size_t k) const {
    return RadialState(grid, snapshots.at(k).phi, snapshots.at(k).t);
}

Trace simulate(const RadialState& initial, const LeslieCoefficients& c, const SolverParams& p,
               int stride) {
    if (stride < 1) throw InvalidParameters("snapshot stride must be >= 1");
    Stepper stepper(initial.grid, c, p);
    Trace trace{initial.grid, p.dt, {}, HaltReason::none, {}};
    RadialState state = initial;
    trace.snapshots.push_back({state.t, state.phi});

    const auto steps = static_cast<long long>(std::ceil((p.t_end - initial.t) / p.dt - 1e-9));
    const double dr = initial.grid.dr();
    for (long long s = 1; s <= steps; ++s) {
        try {
            stepper.advance(state);
        } catch (const SolverHalt& halt) {
            const std::string what = halt.what();
            trace.halt = what.find("pivot") != std::string::npos ? HaltReason::pivot_breakdown
                                                                 : HaltReason::non_finite;
            trace.halt_message = what;
            // The offending field is kept so detection can see the overflow.
            trace.snapshots.push_back({state.t, state.phi});
            return trace;
        }
        const bool last = s == steps;
        if (s % stride == 0 || last) trace.snapshots.push_back({state.t, state.phi});
        if (std::isfinite(p.clip_guard)) {
            double worst = 0.0;
            for (std::size_t i = 0; i + 1 < state.phi.size(); ++i) {
                worst = std::max(worst, std::abs(state.phi[i + 1] - state.phi[i]) / dr);
            }
            if (worst > p.clip_guard) {
                if (!(s % stride == 0 || last)) trace.snapshots.push_back({state.t, state.phi});
                trace.halt = HaltReason::clip_guard;
                trace.halt_message = "max |phi_r| exceeded clip guard";
                return trace;
            }
        }
    }
    return trace;
}

}  // namespace nematic::axisym
