#pragma once

// Reduced axisymmetric angle equation on r in [0, 1]:
//
//   lambda1 (phi_t + r phi_r) = phi_rr + phi_r / r - sin(2 phi) / (2 r^2)
//                               - 3 lambda2 sin(phi) cos(phi)
//
// with phi(0, t) = 0 and phi(1, t) frozen at its initial value.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nematic/coeffs.hpp"
#include "nematic/kernels.hpp"

namespace nematic::axisym {

class RadialGrid {
public:
    static constexpr int min_cells = 16;

    explicit RadialGrid(int n_cells);

    [[nodiscard]] int n_cells() const noexcept { return n_; }
    [[nodiscard]] double dr() const noexcept { return dr_; }
    [[nodiscard]] double r(int i) const noexcept { return nodes_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }

    bool operator==(const RadialGrid& o) const noexcept { return n_ == o.n_; }

private:
    int n_;
    double dr_;
    std::vector<double> nodes_;
};

struct RadialState {
    RadialGrid grid;
    std::vector<double> phi;
    double t = 0.0;

    /// Samples f on the grid, pins phi(0) = 0 and keeps f(1) as the frozen
    /// outer value.
    template <class F>
    static RadialState sample(const RadialGrid& grid, F&& f, double t0 = 0.0) {
        std::vector<double> phi(grid.nodes().size());
        for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = f(grid.nodes()[i]);
        return RadialState(grid, std::move(phi), t0);
    }

    RadialState(RadialGrid g, std::vector<double> values, double t0 = 0.0);

    [[nodiscard]] double outer_value() const noexcept { return phi.back(); }
};

/// Closed-form velocity of the ansatz: u = v(r) e_r + w(z) e_3.
struct StaticFields {
    [[nodiscard]] double v(double r) const noexcept { return r; }
    [[nodiscard]] double w(double z) const noexcept { return -2.0 * z; }
    /// (1/r)(r v)_r + w_z by central differences of the closed forms.
    [[nodiscard]] double divergence_residual(double r, double z, double h = 1e-4) const;
};

StaticFields static_fields() noexcept;

enum class Scheme { semi_implicit, explicit_rk4 };

std::string_view to_string(Scheme s) noexcept;
Scheme parse_scheme(std::string_view text);

struct SolverParams {
    double dt = 1e-4;
    Scheme scheme = Scheme::semi_implicit;
    double t_end = 1.0;
    double clip_guard = std::numeric_limits<double>::infinity();

    /// dt = min(0.25 dr^2 lambda1, 1e-5) for explicit, 1e-4 otherwise.
    static SolverParams defaults(Scheme scheme, const RadialGrid& grid, double lambda1, double t_end);
};

class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when the time integration cannot continue.
class SolverHalt : public std::runtime_error {
public:
    SolverHalt(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    [[nodiscard]] double time() const noexcept { return t_; }

private:
    double t_;
};

void check_params(const SolverParams& p, const RadialGrid& grid, double lambda1);

/// Precomputed three-point operators for one grid and one lambda1.
class RadialOperator {
public:
    RadialOperator(const RadialGrid& grid, const LeslieCoefficients& c);

    [[nodiscard]] const RadialGrid& grid() const noexcept { return grid_; }
    /// (1/lambda1)(D2 + D1 / r)
    [[nodiscard]] const simd::Stencil3& diffusion() const noexcept { return diffusion_; }
    /// -r D1
    [[nodiscard]] const simd::Stencil3& advection() const noexcept { return advection_; }
    /// diffusion + advection
    [[nodiscard]] const simd::Stencil3& linear() const noexcept { return linear_; }
    [[nodiscard]] double lambda1() const noexcept { return lambda1_; }
    [[nodiscard]] double lambda2() const noexcept { return lambda2_; }

private:
    RadialGrid grid_;
    double lambda1_;
    double lambda2_;
    simd::Stencil3 diffusion_;
    simd::Stencil3 advection_;
    simd::Stencil3 linear_;
};

/// phi_t at interior nodes 1..n-1.
std::vector<double> rhs(const RadialState& state, const LeslieCoefficients& c);
void rhs(const RadialOperator& op, std::span<const double> phi, std::span<double> out);

/// Advances by p.dt. Throws SolverHalt on a non-finite field or a broken
/// tridiagonal pivot.
RadialState step(const RadialState& state, const LeslieCoefficients& c, const SolverParams& p);

class Stepper {
public:
    Stepper(const RadialGrid& grid, const LeslieCoefficients& c, const SolverParams& p);
    void advance(RadialState& state);
    [[nodiscard]] const RadialOperator& op() const noexcept { return op_; }
    [[nodiscard]] const SolverParams& params() const noexcept { return params_; }

private:
    void advance_semi_implicit(RadialState& state, double dt);
    void advance_rk4(RadialState& state, double dt);

    RadialOperator op_;
    SolverParams params_;
    std::vector<double> work_a_, work_b_, work_c_, work_d_, stage_, lin_;
};

/// phi_r at every node: central differences inside, one-sided second order
/// at both ends.
std::vector<double> gradient(const RadialState& state);

struct Energy {
    double total = 0.0;
    double grad = 0.0;
    double sin = 0.0;
};

/// Trapezoidal integrals of phi_r^2 r and sin^2(phi) / r over [0, 1].
Energy energy(const RadialState& state);

/// Trapezoidal integral of phi_r^2 r over [0, R]. Requires R >= 2 dr.
double local_energy(const RadialState& state, double radius);

struct Snapshot {
    double t = 0.0;
    std::vector<double> phi;
};

enum class HaltReason { none, non_finite, pivot_breakdown, clip_guard };

std::string_view to_string(HaltReason r) noexcept;

struct Trace {
    RadialGrid grid;
    double dt = 0.0;
    std::vector<Snapshot> snapshots;
    HaltReason halt = HaltReason::none;
    std::string halt_message;

    [[nodiscard]] RadialState state(std::size_t k) const;
};

/// Runs from `initial` to p.t_end, storing every `stride`-th step (and the
/// initial and final states). Halts are recorded, not thrown.
Trace simulate(const RadialState& initial, const LeslieCoefficients& c, const SolverParams& p,
               int stride);

}  // namespace nematic::axisym
