#include "nematic/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nematic::barriers {

BetaClock::BetaClock(double beta0) : beta0_(beta0), t0_(0.0) {
    if (!(beta0 > 0.0) || !std::isfinite(beta0)) throw InvalidBarrier("beta0 must be positive");
    t0_ = 3.0 * std::cbrt(beta0);
}

double BetaClock::beta(double t) const {
    if (!(t < t0_)) {
        std::ostringstream os;
        os << "beta clock expired: t = " << t << " >= T0 = " << t0_;
        throw ClockExpired(os.str());
    }
    const double root = (t0_ - t) / 3.0;
    return root * root * root;
}

double BetaClock::beta_prime(double t) const {
    const double root = std::cbrt(beta(t));
    return -root * root;
}

std::string_view to_string(BarrierKind k) noexcept {
    switch (k) {
        case BarrierKind::super: return "super";
        case BarrierKind::sub: return "sub";
        case BarrierKind::eta: return "eta";
    }
    return "unknown";
}

namespace {

double exponent_b(const LeslieCoefficients& coeffs) {
    const double l1 = coeffs.lambda1();
    if (!(l1 > 0.0)) throw InvalidBarrier("lambda1 must be positive");
    return 3.0 * std::abs(coeffs.lambda2()) / l1;
}

}  // namespace

BarrierSpec BarrierSpec::supersolution(double c, const LeslieCoefficients& coeffs) {
    if (!(c > 0.0)) throw InvalidBarrier("barrier constant c must be positive");
    return {BarrierKind::super, c, exponent_b(coeffs), 0.0};
}

BarrierSpec BarrierSpec::subsolution(double c, const LeslieCoefficients& coeffs) {
    if (!(c > 0.0)) throw InvalidBarrier("barrier constant c must be positive");
    return {BarrierKind::sub, c, exponent_b(coeffs), 0.0};
}

double eta_beta0_limit(const LeslieCoefficients& coeffs) {
    const double l1 = coeffs.lambda1();
    const double q = l1 / (l1 + 3.0 * std::abs(coeffs.lambda2()));
    return q * q * q;
}

BarrierSpec BarrierSpec::eta(double beta0, const LeslieCoefficients& coeffs) {
    if (!(beta0 > 0.0)) throw InvalidBarrier("beta0 must be positive");
    const double l1 = coeffs.lambda1();
    if (!(l1 > 0.0)) throw InvalidBarrier("lambda1 must be positive");
    if (!(std::cbrt(beta0) < l1 / (l1 + 3.0 * std::abs(coeffs.lambda2())))) {
        throw InvalidBarrier("beta0^{1/3} must be below lambda1 / (lambda1 + 3 |lambda2|)");
    }
    return {BarrierKind::eta, 0.0, 0.0, beta0};
}

BarrierSpec BarrierSpec::eta_unchecked(double beta0) {
    if (!(beta0 > 0.0)) throw InvalidBarrier("beta0 must be positive");
    return {BarrierKind::eta, 0.0, 0.0, beta0};
}

std::optional<BetaClock> BarrierSpec::clock() const {
    if (kind != BarrierKind::eta) return std::nullopt;
    return BetaClock(beta0);
}

double eval(const BarrierSpec& b, double r, double t) {
    switch (b.kind) {
        case BarrierKind::super: return 2.0 * std::atan(r * std::exp(b.b * t) / b.c);
        case BarrierKind::sub: return 2.0 * std::atan(-r * std::exp(b.b * t) / b.c);
        case BarrierKind::eta: return 2.0 * std::atan(r / BetaClock(b.beta0).beta(t));
    }
    return 0.0;
}

double eval_r(const BarrierSpec& b, double r, double t) {
    switch (b.kind) {
        case BarrierKind::super:
        case BarrierKind::sub: {
            const double e = std::exp(b.b * t);
            const double s = 2.0 * b.c * e / (b.c * b.c + r * r * e * e);
            return b.kind == BarrierKind::super ? s : -s;
        }
        case BarrierKind::eta: {
            const double beta = BetaClock(b.beta0).beta(t);
            return 2.0 * beta / (beta * beta + r * r);
        }
    }
    return 0.0;
}

double residual(const BarrierSpec& b, const LeslieCoefficients& c, double r, double t) {
    const double l1 = c.lambda1();
    const double l2 = c.lambda2();
    switch (b.kind) {
        case BarrierKind::super:
        case BarrierKind::sub: {
            const double e = std::exp(b.b * t);
            const double f = eval(b, r, t);
            const double mag = 2.0 * r * b.c * e / (b.c * b.c + r * r * e * e) *
                               (l1 * (1.0 + b.b) + 3.0 * l2 * std::cos(f));
            // The operator is odd in f, so the mirrored barrier flips sign.
            return b.kind == BarrierKind::super ? mag : -mag;
        }
        case BarrierKind::eta: {
            const BetaClock clock(b.beta0);
            const double beta = clock.beta(t);
            const double f = 2.0 * std::atan(r / beta);
            return 2.0 * r / (beta * beta + r * r) *
                   (-l1 * clock.beta_prime(t) + l1 * beta + 3.0 * l2 * beta * std::cos(f));
        }
    }
    return 0.0;
}

double eta_residual_displayed(const BarrierSpec& b, const LeslieCoefficients& c, double r, double t) {
    if (b.kind != BarrierKind::eta) throw InvalidBarrier("displayed residual is defined for eta only");
    const BetaClock clock(b.beta0);
    const double beta = clock.beta(t);
    const double f = 2.0 * std::atan(r / beta);
    const double l1 = c.lambda1();
    return 2.0 * r / (beta * beta + r * r) *
           (l1 * clock.beta_prime(t) + l1 * beta + 3.0 * c.lambda2() * beta * std::cos(f));
}

double eta_residual_bound(const BarrierSpec& b, const LeslieCoefficients& c, double r, double t) {
    if (b.kind != BarrierKind::eta) throw InvalidBarrier("residual bound is defined for eta only");
    const double beta = BetaClock(b.beta0).beta(t);
    const double root = std::cbrt(beta);
    const double l1 = c.lambda1();
    return 2.0 * r * root * root / (beta * beta + r * r) *
           (-l1 + (l1 + 3.0 * std::abs(c.lambda2())) * root);
}

double fit_barrier_c(const axisym::RadialState& initial, double safety) {
    const auto nodes = initial.grid.nodes();
    double c_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double a = std::abs(initial.phi[i]);
        if (!(a < std::numbers::pi)) {
            throw InvalidBarrier("sup |phi0| must stay below pi to fit a barrier");
        }
        if (a > 0.0) c_max = std::min(c_max, nodes[i] / std::tan(0.5 * a));
    }
    if (!std::isfinite(c_max)) return 1.0;
    return safety * c_max;
}

namespace {

void scan(Violation& v, double value, double t, double r) {
    if (value > v.worst) v = {value, t, r};
}

}  // namespace

namespace {

OrderingReport scan_ordering(const BarrierSpec& lower, const axisym::Trace& run,
                             const BarrierSpec* upper) {
    if (run.snapshots.empty()) throw HarnessMisconfigured("ordering check needs a non-empty trace");
    const double dr = run.grid.dr();
    OrderingReport report;
    report.lower_kind = lower.kind;
    if (upper) report.upper_kind = upper->kind;
    report.tolerance = 10.0 * (dr * dr + run.dt);
    const auto nodes = run.grid.nodes();
    const std::size_t n = nodes.size() - 1;

    auto expired = [](const BarrierSpec& b, double t) {
        return b.kind == BarrierKind::eta && !(t < BetaClock(b.beta0).blowup_time());
    };

    for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
        const auto& snap = run.snapshots[k];
        if (expired(lower, snap.t) || (upper && expired(*upper, snap.t))) {
            ++report.snapshots_skipped;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            const double lo = eval(lower, nodes[i], snap.t) - snap.phi[i];
            const double hi = upper ? snap.phi[i] - eval(*upper, nodes[i], snap.t)
                                    : -std::numeric_limits<double>::infinity();
            const bool boundary = k == 0 || i == 0 || i == n;
            if (boundary && (lo > report.tolerance || hi > report.tolerance)) {
                std::ostringstream os;
                os << "ordering precondition fails at t = " << snap.t << ", r = " << nodes[i];
                throw HarnessMisconfigured(os.str());
            }
            scan(report.lower, lo, snap.t, nodes[i]);
            if (upper) scan(report.upper, hi, snap.t, nodes[i]);
        }
        ++report.snapshots_checked;
    }
    report.passed = report.lower.worst <= report.tolerance && report.upper.worst <= report.tolerance;
    return report;
}

}  // namespace

OrderingReport check_ordering(const BarrierSpec& lower, const axisym::Trace& run,
                              const BarrierSpec& upper) {
    return scan_ordering(lower, run, &upper);
}

OrderingReport check_lower(const BarrierSpec& lower, const axisym::Trace& run) {
    return scan_ordering(lower, run, nullptr);
}

}  // namespace nematic::barriers
