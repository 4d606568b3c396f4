#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nematic/radial.hpp"

namespace nematic::blowup {

class InsufficientData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// (-3 phi_0 + 4 phi_1 - phi_2) / (2 dr) with phi_0 = 0.
double origin_gradient(const axisym::RadialState& state);
double origin_gradient(std::span<const double> phi, double dr);

struct TimeValue {
    double t = 0.0;
    double value = 0.0;
};

struct BlowupReport {
    bool detected = false;
    bool hard_overflow = false;
    double t_detect = 0.0;
    double cap = 0.0;
    double gradient_at_detect = 0.0;
    std::vector<TimeValue> grad_history;
    /// NaN when no snapshot up to detection had a resolvable bubble.
    double profile_fit_error = std::numeric_limits<double>::quiet_NaN();
    double profile_time = std::numeric_limits<double>::quiet_NaN();
    /// beta_hat = 2 / phi_r(0) on snapshots with phi_r(0) >= 100.
    std::vector<TimeValue> beta_fit;
    double local_radius = 0.0;
    std::vector<TimeValue> local_energy_trace;
};

inline constexpr double min_resolvable_gradient = 100.0;

/// Flags blow-up when phi_r(0) first exceeds `resolution_cap` (default
/// 0.5 / dr). Histories run to the detection snapshot, or the whole trace.
BlowupReport detect(const axisym::Trace& run, std::optional<double> resolution_cap = std::nullopt,
                    double local_radius = 0.05);

struct ProfileFit {
    double beta_hat = 0.0;
    double profile_error = 0.0;
};

/// beta_hat = 2 / phi_r(0); max |phi(beta_hat rho) - 2 atan(rho)| over
/// rho in [0, 1]. Throws InsufficientData when phi_r(0) < 100.
ProfileFit extract_profile(const axisym::RadialState& state);
ProfileFit extract_profile(std::span<const double> phi, double dr);

struct BetaLawFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t samples = 0;
};

/// Least-squares line through (t, beta_hat^{1/3}). Needs >= 20 samples.
BetaLawFit fit_beta_law(const BlowupReport& report);
BetaLawFit fit_beta_law(std::span<const TimeValue> beta_series);

}  // namespace nematic::blowup
