#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nematic {

/// The six Leslie viscosities. lambda1 and lambda2 are derived, never stored.
struct LeslieCoefficients {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;
    double mu4 = 0.0;
    double mu5 = 0.0;
    double mu6 = 0.0;

    [[nodiscard]] double lambda1() const noexcept { return mu3 - mu2; }
    [[nodiscard]] double lambda2() const noexcept { return mu6 - mu5; }

    /// (0, -1, 1, 3, 0, 0): lambda1 = 2, lambda2 = 0, g == 2, h == 1.
    static LeslieCoefficients simplified() noexcept;

    /// A canonical admissible set with the requested rotational and
    /// stretching viscosities. Requires lambda1 > 0.
    static LeslieCoefficients from_lambdas(double lambda1, double lambda2);

    bool operator==(const LeslieCoefficients&) const = default;
};

enum class Relation {
    parodi,             // mu2 + mu3 = mu6 - mu5
    lambda1_positive,   // mu3 - mu2 > 0
    mu4_positive,       // mu4 > 0
    bulk_positive,      // 2 mu1 + 3 mu4 + 2 mu5 + 2 mu6 > 0
    stretching_bound,   // 2 mu4 + mu5 + mu6 > lambda2^2 / lambda1
};

std::string_view describe(Relation r) noexcept;

struct ValidationResult {
    std::vector<Relation> violated;

    [[nodiscard]] bool ok() const noexcept { return violated.empty(); }
    [[nodiscard]] bool violates(Relation r) const noexcept;
    [[nodiscard]] std::string summary() const;
};

class NonFiniteCoefficient : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double parodi_tolerance = 1e-12;

/// Checks the Parodi relation (absolute tolerance 1e-12) and the strict
/// inequalities with zero margin. Throws NonFiniteCoefficient on NaN/inf.
ValidationResult validate(const LeslieCoefficients& c);

/// g(phi) = mu1 sin^2 cos^2 + (mu5 - mu2)/2 sin^2 + (mu3 + mu6)/2 cos^2 + mu4/2
double g_coeff(const LeslieCoefficients& c, double phi) noexcept;

/// h(phi) = mu3 cos^2 - mu2 sin^2
double h_coeff(const LeslieCoefficients& c, double phi) noexcept;

}  // namespace nematic
