#pragma once

// One-dimensional Poiseuille reduction on [-L, L]:
//
//   w_t + a = (g(phi) w_x + h(phi) phi_t)_x
//   lambda1 phi_t = phi_xx - h(phi) w_x

#include <span>
#include <stdexcept>
#include <vector>

#include "nematic/coeffs.hpp"

namespace nematic::poiseuille {

class InvalidSetup : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class StepHalt : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntervalGrid {
public:
    IntervalGrid(double half_length, int n_cells);

    [[nodiscard]] double half_length() const noexcept { return half_length_; }
    [[nodiscard]] int n_cells() const noexcept { return n_; }
    [[nodiscard]] double dx() const noexcept { return dx_; }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }

    bool operator==(const IntervalGrid& o) const noexcept {
        return n_ == o.n_ && half_length_ == o.half_length_;
    }

private:
    double half_length_;
    int n_;
    double dx_;
    std::vector<double> nodes_;
};

/// Dirichlet data: w is constant in time at each end, phi moves at a common
/// rate, phi(+-L, t) = phi_side + phi_rate t.
struct BoundaryData {
    double w_left = 0.0;
    double w_right = 0.0;
    double phi_left = 0.0;
    double phi_right = 0.0;
    double phi_rate = 0.0;

    static BoundaryData homogeneous() noexcept { return {}; }
    /// Traces of w = -2x, phi = t.
    static BoundaryData counterexample(double half_length) noexcept;
};

struct PoiseuilleState {
    IntervalGrid grid;
    std::vector<double> w;
    std::vector<double> phi;
    double t = 0.0;
    double a = 0.0;
    BoundaryData boundary;
    /// v(-L, t); advanced with the boundary flux.
    double v_left = 0.0;

    PoiseuilleState(IntervalGrid g, std::vector<double> w0, std::vector<double> phi0, double a_,
                    BoundaryData bc, double v_left0 = 0.0, double t0 = 0.0);

    void impose_boundary();
};

/// Largest g(phi) over all angles.
double max_g(const LeslieCoefficients& c);
/// 0.25 dx^2 min(lambda1, 1 / max g)
double stable_dt(const LeslieCoefficients& c, double dx);

/// phi_t = (phi_xx - h(phi) w_x) / lambda1 inside, the boundary rate at the ends.
std::vector<double> phi_rate(const PoiseuilleState& s, const LeslieCoefficients& c);

/// One explicit step of the coupled system in flux form.
PoiseuilleState step_general(const PoiseuilleState& state, const LeslieCoefficients& c, double dt);

/// Hard-coded g = 2, h = 1, lambda1 = 2 stepper used as a cross-check.
PoiseuilleState step_simplified(const PoiseuilleState& state, double dt);

/// v = v(-L) + cumulative trapezoid of w.
std::vector<double> v_potential(const PoiseuilleState& state);

struct CounterexampleReport {
    double half_length = 0.0;
    int n_cells = 0;
    double t_end = 0.0;
    double dt = 0.0;
    double max_phi_initial = 0.0;
    double max_phi_final = 0.0;
    double phi_error = 0.0;  // max |phi(x, t_end) - t_end|
    double w_error = 0.0;    // max |w(x, t_end) + 2x|
    double heat_residual = 0.0;
    bool maximum_principle_violated = false;
};

/// w0 = -2x, phi0 = 0 with the exact traces as boundary data and v(-L) = -L^2.
PoiseuilleState counterexample_initial(double half_length, int n_cells);

/// Errors against w = -2x, phi = t at the last snapshot, plus the heat check.
CounterexampleReport counterexample_report(std::span<const PoiseuilleState> history, double dt);

CounterexampleReport counterexample_run(double half_length = 5.0, int n_cells = 200,
                                        double t_end = 1.0, int snapshots = 100);

/// max over snapshots and interior nodes of |(s^{k+1} - s^k) / dt - D2 s^k|, s = v + phi.
double heat_reduction_check(std::span<const PoiseuilleState> history);

struct EnergyIdentity {
    double residual = 0.0;
    bool boundary_flux_warning = false;
    std::vector<double> times;
    std::vector<double> energy;       // E = 1/2 int (w^2 + phi_x^2)
    std::vector<double> dissipation;  // D = int (w_x^2 + phi_t^2 + (w_x + phi_t)^2)
};

double discrete_energy(const PoiseuilleState& s);
double discrete_dissipation(const PoiseuilleState& s, const LeslieCoefficients& c);

/// max_k |(E_{k+1} - E_k) / dt + (D_k + D_{k+1}) / 2|. Requires the simplified
/// coefficients and at least three snapshots.
EnergyIdentity energy_identity_residual(std::span<const PoiseuilleState> history,
                                        const LeslieCoefficients& c);

/// Steps between stored snapshots, and the step that lands exactly on t_end.
long long steps_per_snapshot(double dt, double span, int snapshots);
double effective_dt(double dt, double span, int snapshots);

/// Integrates to t_end, keeping `snapshots` + 1 evenly spaced states.
std::vector<PoiseuilleState> run(const PoiseuilleState& initial, const LeslieCoefficients& c,
                                 double dt, double t_end, int snapshots);

}  // namespace nematic::poiseuille
