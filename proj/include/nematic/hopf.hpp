#pragma once

// Small-energy director data with non-trivial topology: H o Psi_lambda o Phi.
//
// Points of S^3 are pairs (z, w) in C^2, identified with R^4 as
// (Re z, Im z, Re w, Im w). The projection pole is e = (0, 0, 0, 1), that is
// z = 0, w = i.

#include <array>
#include <complex>
#include <stdexcept>

namespace nematic::hopf {

using Vec3 = std::array<double, 3>;

class InvalidPoint : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct S3Point {
    std::complex<double> z;
    std::complex<double> w;

    /// Throws InvalidPoint unless |z|^2 + |w|^2 = 1 within 1e-12.
    static S3Point checked(std::complex<double> z, std::complex<double> w);
    static S3Point from_r4(double x1, double x2, double x3, double x4);
    [[nodiscard]] std::array<double, 4> r4() const noexcept;
    [[nodiscard]] double norm_defect() const noexcept;
};

S3Point pole() noexcept;
S3Point antipode() noexcept;

struct DilationParam {
    double lambda;
    explicit DilationParam(double l);
};

/// (|z|^2 - |w|^2, 2 z conj(w)) in R x C = R^3.
Vec3 hopf(const S3Point& p) noexcept;

/// Stereographic projection from the pole, dilation by lambda, inverse
/// projection. Points within 1e-14 of the pole are returned as the pole.
S3Point psi_lambda(const S3Point& p, DilationParam d) noexcept;

/// Ball to S^3 minus the pole: x -> (sin(pi|x|) x/|x|, -cos(pi|x|)), equal to
/// the pole on the unit sphere and to its antipode at the centre.
S3Point ball_to_s3(const Vec3& x) noexcept;

/// H o Psi_lambda o Phi
Vec3 initial_director(const Vec3& x, double lambda) noexcept;

/// Solenoidal vortex vanishing on the unit sphere: (1 - |x|^2)^2 (-y, x, 0).
Vec3 sample_velocity(const Vec3& x) noexcept;

struct EnergyResult {
    double lambda = 1.0;
    int mesh = 0;
    double energy = 0.0;
    /// lambda > mesh / 8: the 1/lambda concentration scale is under-resolved.
    bool under_resolved = false;
};

/// int over S^3 of |grad (H o Psi_lambda)|^2 on an M x M x 2M midpoint grid in
/// hyperspherical angles centred on the antipode of the pole, with central
/// differences along the coordinate lines.
EnergyResult dirichlet_energy_s3(double lambda, int mesh);

struct InitialDataEnergy {
    double lambda = 1.0;
    int mesh = 0;
    double velocity = 0.0;  // 1/2 int |u / lambda|^2
    double director = 0.0;  // 1/2 int |grad d0|^2
    double total = 0.0;
    bool under_resolved = false;
};

/// 1/2 int over the unit ball of |lambda^{-1} u|^2 + |grad(H o Psi_lambda o Phi)|^2,
/// on an M x M x 2M midpoint grid in spherical coordinates. The velocity term
/// is skipped when include_velocity is false.
InitialDataEnergy initial_data_energy(double lambda, bool include_velocity, int mesh);

/// Worker threads for the quadratures: NEMATIC_THREADS, else hardware concurrency.
unsigned quadrature_threads() noexcept;

}  // namespace nematic::hopf
