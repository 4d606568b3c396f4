#pragma once

// Closed-form comparison functions for the angle equation.
//
//   super:  2 atan( r e^{bt} / c)
//   sub:    2 atan(-r e^{bt} / c)      b = 3 |lambda2| / lambda1
//   eta:    2 atan( r / beta(t))       beta' = -beta^{2/3}, beta(0) = beta0

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "nematic/coeffs.hpp"
#include "nematic/radial.hpp"

namespace nematic::barriers {

class ClockExpired : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidBarrier : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// beta(t) = ((3 beta0^{1/3} - t) / 3)^3, vanishing at T0 = 3 beta0^{1/3}.
class BetaClock {
public:
    explicit BetaClock(double beta0);

    [[nodiscard]] double beta0() const noexcept { return beta0_; }
    [[nodiscard]] double blowup_time() const noexcept { return t0_; }
    /// Throws ClockExpired for t >= T0.
    [[nodiscard]] double beta(double t) const;
    /// -beta(t)^{2/3}
    [[nodiscard]] double beta_prime(double t) const;

private:
    double beta0_;
    double t0_;
};

enum class BarrierKind { super, sub, eta };

std::string_view to_string(BarrierKind k) noexcept;

struct BarrierSpec {
    BarrierKind kind = BarrierKind::super;
    double c = 1.0;
    double b = 0.0;
    double beta0 = 0.0;

    static BarrierSpec supersolution(double c, const LeslieCoefficients& coeffs);
    static BarrierSpec subsolution(double c, const LeslieCoefficients& coeffs);
    /// Enforces beta0^{1/3} < lambda1 / (lambda1 + 3 |lambda2|).
    static BarrierSpec eta(double beta0, const LeslieCoefficients& coeffs);
    /// Skips the beta0 constraint (negative controls).
    static BarrierSpec eta_unchecked(double beta0);

    [[nodiscard]] std::optional<BetaClock> clock() const;
};

/// Largest admissible beta0 for the eta barrier: (lambda1 / (lambda1 + 3|lambda2|))^3.
double eta_beta0_limit(const LeslieCoefficients& coeffs);

double eval(const BarrierSpec& b, double r, double t);
/// d/dr of the barrier.
double eval_r(const BarrierSpec& b, double r, double t);

/// lambda1 (f_t + r f_r) - f_rr - f_r / r + sin(2f) / (2 r^2) + 3 lambda2 sin f cos f,
/// from closed forms. Zero at r = 0.
double residual(const BarrierSpec& b, const LeslieCoefficients& c, double r, double t);

/// Eta residual as printed in the blow-up construction, with +lambda1 beta'
/// in place of the -lambda1 beta' that differentiation gives.
double eta_residual_displayed(const BarrierSpec& b, const LeslieCoefficients& c, double r, double t);

/// Last line of that chain:
/// 2 r beta^{2/3} / (beta^2 + r^2) (-lambda1 + (lambda1 + 3 |lambda2|) beta^{1/3}).
double eta_residual_bound(const BarrierSpec& b, const LeslieCoefficients& c, double r, double t);

/// Largest c (times `safety`) such that 2 atan(r / c) >= |phi0| at every
/// node. Throws InvalidBarrier if sup |phi0| >= pi.
double fit_barrier_c(const axisym::RadialState& initial, double safety = 0.99);

struct Violation {
    double worst = -std::numeric_limits<double>::infinity();
    double t = 0.0;
    double r = 0.0;
};

struct OrderingReport {
    BarrierKind lower_kind = BarrierKind::sub;
    std::optional<BarrierKind> upper_kind;  // empty for one-sided checks
    Violation lower;  // max of sub - phi
    Violation upper;  // max of phi - super
    double tolerance = 0.0;
    std::size_t snapshots_checked = 0;
    std::size_t snapshots_skipped = 0;  // beyond the eta clock
    bool passed = false;
};

class HarnessMisconfigured : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Scans every stored snapshot and node for lower <= phi <= upper. The
/// tolerance is 10 (dr^2 + dt). Throws HarnessMisconfigured when the
/// ordering fails at t = 0 or on the boundary nodes.
OrderingReport check_ordering(const BarrierSpec& lower, const axisym::Trace& run,
                              const BarrierSpec& upper);

/// One-sided variant: lower <= phi only (blow-up runs have no upper barrier).
OrderingReport check_lower(const BarrierSpec& lower, const axisym::Trace& run);

}  // namespace nematic::barriers
