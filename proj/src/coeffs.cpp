#include "nematic/coeffs.hpp"

#include <cmath>
#include <sstream>

namespace nematic {

LeslieCoefficients LeslieCoefficients::simplified() noexcept {
    return {0.0, -1.0, 1.0, 3.0, 0.0, 0.0};
}

LeslieCoefficients LeslieCoefficients::from_lambdas(double lambda1, double lambda2) {
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2)) {
        throw NonFiniteCoefficient("from_lambdas: non-finite lambda");
    }
    if (!(lambda1 > 0.0)) {
        throw std::invalid_argument("from_lambdas: lambda1 must be positive");
    }
    LeslieCoefficients c;
    c.mu2 = 0.5 * (lambda2 - lambda1);
    c.mu3 = 0.5 * (lambda2 + lambda1);
    c.mu5 = 0.0;
    c.mu6 = lambda2;
    c.mu4 = 1.0 + std::abs(lambda2) + lambda2 * lambda2 / lambda1;
    c.mu1 = 0.0;
    return c;
}

std::string_view describe(Relation r) noexcept {
    switch (r) {
        case Relation::parodi: return "parodi: mu2 + mu3 = mu6 - mu5";
        case Relation::lambda1_positive: return "lambda1 = mu3 - mu2 > 0";
        case Relation::mu4_positive: return "mu4 > 0";
        case Relation::bulk_positive: return "2 mu1 + 3 mu4 + 2 mu5 + 2 mu6 > 0";
        case Relation::stretching_bound: return "2 mu4 + mu5 + mu6 > lambda2^2 / lambda1";
    }
    return "unknown relation";
}

bool ValidationResult::violates(Relation r) const noexcept {
    for (auto v : violated) {
        if (v == r) return true;
    }
    return false;
}

std::string ValidationResult::summary() const {
    if (ok()) return "pass";
    std::ostringstream os;
    os << "violated:";
    for (std::size_t i = 0; i < violated.size(); ++i) {
        os << (i == 0 ? " " : "; ") << describe(violated[i]);
    }
    return os.str();
}

ValidationResult validate(const LeslieCoefficients& c) {
    for (double m : {c.mu1, c.mu2, c.mu3, c.mu4, c.mu5, c.mu6}) {
        if (!std::isfinite(m)) throw NonFiniteCoefficient("Leslie coefficient is not finite");
    }
    ValidationResult out;
    const double l1 = c.lambda1();
    const double l2 = c.lambda2();
    if (std::abs((c.mu2 + c.mu3) - l2) > parodi_tolerance) out.violated.push_back(Relation::parodi);
    if (!(l1 > 0.0)) out.violated.push_back(Relation::lambda1_positive);
    if (!(c.mu4 > 0.0)) out.violated.push_back(Relation::mu4_positive);
    if (!(2.0 * c.mu1 + 3.0 * c.mu4 + 2.0 * c.mu5 + 2.0 * c.mu6 > 0.0)) {
        out.violated.push_back(Relation::bulk_positive);
    }
    // Undefined for lambda1 <= 0; counted as violated.
    if (!(l1 > 0.0) || !(2.0 * c.mu4 + c.mu5 + c.mu6 > l2 * l2 / l1)) {
        out.violated.push_back(Relation::stretching_bound);
    }
    return out;
}

// Both coefficients are evaluated through double-angle identities. The
// rewrite is exact algebra and keeps the simplified set at g == 2, h == 1
// without rounding.
double g_coeff(const LeslieCoefficients& c, double phi) noexcept {
    const double c2 = std::cos(2.0 * phi);
    const double s2 = std::sin(2.0 * phi);
    const double a = c.mu5 - c.mu2;
    const double b = c.mu3 + c.mu6;
    return 0.25 * c.mu1 * s2 * s2 + 0.25 * (a + b) + 0.25 * (b - a) * c2 + 0.5 * c.mu4;
}

double h_coeff(const LeslieCoefficients& c, double phi) noexcept {
    const double c2 = std::cos(2.0 * phi);
    return 0.5 * (c.mu3 - c.mu2) + 0.5 * (c.mu3 + c.mu2) * c2;
}

}  // namespace nematic
