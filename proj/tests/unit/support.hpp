#pragma once

#include <cmath>
#include <random>

#include "nematic/coeffs.hpp"

namespace testing {

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Admissible Leslie coefficients drawn from a wide box: Parodi holds by
/// construction and mu4 clears every strict inequality by a margin.
inline nematic::LeslieCoefficients random_coefficients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> l1(0.2, 4.0), l2(-3.0, 3.0), any(-2.0, 2.0), pos(0.0, 2.0);
    const double lambda1 = l1(rng);
    const double lambda2 = l2(rng);
    nematic::LeslieCoefficients c;
    c.mu1 = pos(rng);
    c.mu2 = 0.5 * (lambda2 - lambda1);
    c.mu3 = c.mu2 + lambda1;
    c.mu5 = any(rng);
    c.mu6 = c.mu5 + lambda2;
    double need = 0.0;
    need = std::max(need, 0.5 * (lambda2 * lambda2 / lambda1 - c.mu5 - c.mu6));
    need = std::max(need, -(2.0 * c.mu1 + 2.0 * c.mu5 + 2.0 * c.mu6) / 3.0);
    c.mu4 = need + 0.1 + pos(rng);
    return c;
}

}  // namespace testing
