#include "nematic/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nematic::blowup {

double origin_gradient(std::span<const double> phi, double dr) {
    if (phi.size() < 3) throw InsufficientData("origin_gradient needs three nodes");
    return (-3.0 * 0.0 + 4.0 * phi[1] - phi[2]) / (2.0 * dr);
}

double origin_gradient(const axisym::RadialState& state) {
    return origin_gradient(state.phi, state.grid.dr());
}

ProfileFit extract_profile(std::span<const double> phi, double dr) {
    const double g = origin_gradient(phi, dr);
    if (!(g >= min_resolvable_gradient)) throw InsufficientData("no bubble yet: origin gradient below 100");
    ProfileFit fit;
    fit.beta_hat = 2.0 / g;
    constexpr int samples = 512;
    const auto last = phi.size() - 1;
    for (int j = 0; j <= samples; ++j) {
        const double rho = static_cast<double>(j) / samples;
        const double pos = fit.beta_hat * rho / dr;
        const auto i = std::min(static_cast<std::size_t>(pos), last - 1);
        const double frac = pos - static_cast<double>(i);
        const double value = phi[i] + frac * (phi[i + 1] - phi[i]);
        fit.profile_error = std::max(fit.profile_error, std::abs(value - 2.0 * std::atan(rho)));
    }
    return fit;
}

ProfileFit extract_profile(const axisym::RadialState& state) {
    return extract_profile(state.phi, state.grid.dr());
}

BlowupReport detect(const axisym::Trace& run, std::optional<double> resolution_cap,
                    double local_radius) {
    if (run.snapshots.size() < 10) throw InsufficientData("detection needs at least 10 snapshots");
    const double dr = run.grid.dr();
    BlowupReport report;
    report.cap = resolution_cap.value_or(0.5 / dr);
    report.local_radius = local_radius;

    std::optional<std::size_t> last_resolvable;
    for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
        const auto& snap = run.snapshots[k];
        const bool finite = std::all_of(snap.phi.begin(), snap.phi.end(),
                                        [](double v) { return std::isfinite(v); });
        if (!finite) {
            report.detected = true;
            report.hard_overflow = true;
            report.t_detect = snap.t;
            report.gradient_at_detect = std::numeric_limits<double>::infinity();
            break;
        }
        const double g = origin_gradient(snap.phi, dr);
        report.grad_history.push_back({snap.t, g});
        const axisym::RadialState state(run.grid, snap.phi, snap.t);
        report.local_energy_trace.push_back({snap.t, axisym::local_energy(state, local_radius)});
        if (g >= min_resolvable_gradient) {
            report.beta_fit.push_back({snap.t, 2.0 / g});
            last_resolvable = k;
        }
        if (g > report.cap) {
            report.detected = true;
            report.t_detect = snap.t;
            report.gradient_at_detect = g;
            break;
        }
    }
    if (last_resolvable) {
        const auto& snap = run.snapshots[*last_resolvable];
        report.profile_fit_error = extract_profile(snap.phi, dr).profile_error;
        report.profile_time = snap.t;
    }
    return report;
}

BetaLawFit fit_beta_law(std::span<const TimeValue> beta_series) {
    if (beta_series.size() < 20) throw InsufficientData("beta law fit needs at least 20 samples");
    const auto n = static_cast<double>(beta_series.size());
    double mean_t = 0.0;
    double mean_y = 0.0;
    for (const auto& s : beta_series) {
        mean_t += s.t;
        mean_y += std::cbrt(s.value);
    }
    mean_t /= n;
    mean_y /= n;
    double stt = 0.0;
    double sty = 0.0;
    double syy = 0.0;
    for (const auto& s : beta_series) {
        const double dt = s.t - mean_t;
        const double dy = std::cbrt(s.value) - mean_y;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    const auto [lo, hi] = std::minmax_element(beta_series.begin(), beta_series.end(),
                                              [](const TimeValue& a, const TimeValue& b) { return a.t < b.t; });
    if (!(hi->t > lo->t)) throw InsufficientData("beta law fit needs distinct sample times");
    BetaLawFit fit;
    fit.samples = beta_series.size();
    fit.slope = sty / stt;
    fit.intercept = mean_y - fit.slope * mean_t;
    double ss_res = 0.0;
    for (const auto& s : beta_series) {
        const double e = std::cbrt(s.value) - (fit.intercept + fit.slope * s.t);
        ss_res += e * e;
    }
    // A constant series is fit exactly by a flat line.
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

BetaLawFit fit_beta_law(const BlowupReport& report) {
    if (!report.detected) throw InsufficientData("beta law fit needs a detected blow-up");
    return fit_beta_law(report.beta_fit);
}

}  // namespace nematic::blowup
