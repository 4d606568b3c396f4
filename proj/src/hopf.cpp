#include "nematic/hopf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "nematic/kernels.hpp"

namespace nematic::hopf {

S3Point S3Point::checked(std::complex<double> z, std::complex<double> w) {
    S3Point p{z, w};
    if (!(p.norm_defect() <= 1e-12)) throw InvalidPoint("point is not on the unit 3-sphere");
    return p;
}

S3Point S3Point::from_r4(double x1, double x2, double x3, double x4) {
    return {{x1, x2}, {x3, x4}};
}

std::array<double, 4> S3Point::r4() const noexcept { return {z.real(), z.imag(), w.real(), w.imag()}; }

double S3Point::norm_defect() const noexcept { return std::abs(std::norm(z) + std::norm(w) - 1.0); }

S3Point pole() noexcept { return {{0.0, 0.0}, {0.0, 1.0}}; }
S3Point antipode() noexcept { return {{0.0, 0.0}, {0.0, -1.0}}; }

DilationParam::DilationParam(double l) : lambda(l) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("dilation parameter must be positive");
}

Vec3 hopf(const S3Point& p) noexcept {
    const std::complex<double> q = 2.0 * p.z * std::conj(p.w);
    return {std::norm(p.z) - std::norm(p.w), q.real(), q.imag()};
}

S3Point psi_lambda(const S3Point& p, DilationParam d) noexcept {
    const auto x = p.r4();
    const double denom = 1.0 - x[3];
    if (denom < 1e-14) return pole();
    const double s = d.lambda / denom;
    const double y1 = s * x[0];
    const double y2 = s * x[1];
    const double y3 = s * x[2];
    const double yy = y1 * y1 + y2 * y2 + y3 * y3;
    const double inv = 1.0 / (yy + 1.0);
    return S3Point::from_r4(2.0 * y1 * inv, 2.0 * y2 * inv, 2.0 * y3 * inv, (yy - 1.0) * inv);
}

S3Point ball_to_s3(const Vec3& x) noexcept {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    // sin(pi rho) / rho is smooth through the centre.
    const double scale = rho < 1e-12 ? std::numbers::pi : std::sin(std::numbers::pi * rho) / rho;
    return S3Point::from_r4(scale * x[0], scale * x[1], scale * x[2], -std::cos(std::numbers::pi * rho));
}

Vec3 initial_director(const Vec3& x, double lambda) noexcept {
    return hopf(psi_lambda(ball_to_s3(x), DilationParam(lambda)));
}

Vec3 sample_velocity(const Vec3& x) noexcept {
    const double rr = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double f = (1.0 - rr) * (1.0 - rr);
    return {-f * x[1], f * x[0], 0.0};
}

unsigned quadrature_threads() noexcept {
    if (const char* env = std::getenv("NEMATIC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

namespace {

double dist2(const Vec3& a, const Vec3& b) noexcept {
    const double d0 = a[0] - b[0];
    const double d1 = a[1] - b[1];
    const double d2 = a[2] - b[2];
    return d0 * d0 + d1 * d1 + d2 * d2;
}

// Evaluates slice(i) for i in [0, count) on a small pool; the partial sums
// are combined in index order so the result does not depend on scheduling.
double parallel_slices(int count, const std::function<double(int)>& slice) {
    std::vector<double> partial(static_cast<std::size_t>(count), 0.0);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) partial[static_cast<std::size_t>(i)] = slice(i);
    };
    const unsigned n_threads = std::min<unsigned>(quadrature_threads(), static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

void check_mesh(int mesh) {
    if (mesh < 16) throw std::invalid_argument("quadrature mesh must be at least 16");
}

// Step of the coordinate-line differences, as a fraction of the cell width.
constexpr double fd_fraction = 0.25;

}  // namespace

EnergyResult dirichlet_energy_s3(double lambda, int mesh) {
    check_mesh(mesh);
    const DilationParam dil(lambda);
    const int m_chi = mesh;
    const int m_theta = mesh;
    const int m_phi = 2 * mesh;
    const double d_chi = std::numbers::pi / m_chi;
    const double d_theta = std::numbers::pi / m_theta;
    const double d_phi = 2.0 * std::numbers::pi / m_phi;

    // chi is the angle from the antipode -e, where the map concentrates.
    auto point = [](double chi, double theta, double ph) {
        const double sc = std::sin(chi);
        return S3Point::from_r4(sc * std::sin(theta) * std::cos(ph), sc * std::sin(theta) * std::sin(ph),
                                sc * std::cos(theta), -std::cos(chi));
    };
    auto field = [&](double chi, double theta, double ph) { return hopf(psi_lambda(point(chi, theta, ph), dil)); };

    const double h_chi = fd_fraction * d_chi;
    const double h_theta = fd_fraction * d_theta;
    const double h_phi = fd_fraction * d_phi;

    const double total = parallel_slices(m_chi, [&](int i) {
        const double chi = (i + 0.5) * d_chi;
        const double s_chi = std::sin(chi);
        std::vector<double> density(static_cast<std::size_t>(m_theta) * m_phi);
        std::vector<double> weight(density.size());
        std::size_t idx = 0;
        for (int j = 0; j < m_theta; ++j) {
            const double theta = (j + 0.5) * d_theta;
            const double s_theta = std::sin(theta);
            for (int k = 0; k < m_phi; ++k, ++idx) {
                const double ph = (k + 0.5) * d_phi;
                const double g_chi =
                    dist2(field(chi + h_chi, theta, ph), field(chi - h_chi, theta, ph)) / (4.0 * h_chi * h_chi);
                const double g_theta = dist2(field(chi, theta + h_theta, ph), field(chi, theta - h_theta, ph)) /
                                       (4.0 * h_theta * h_theta);
                const double g_phi =
                    dist2(field(chi, theta, ph + h_phi), field(chi, theta, ph - h_phi)) / (4.0 * h_phi * h_phi);
                density[idx] = g_chi + g_theta / (s_chi * s_chi) + g_phi / (s_chi * s_chi * s_theta * s_theta);
                weight[idx] = s_chi * s_chi * s_theta * d_chi * d_theta * d_phi;
            }
        }
        return simd::dot(weight, density);
    });
    return {lambda, mesh, total, lambda > mesh / 8.0};
}

InitialDataEnergy initial_data_energy(double lambda, bool include_velocity, int mesh) {
    check_mesh(mesh);
    const DilationParam dil(lambda);
    const int m_rho = mesh;
    const int m_theta = mesh;
    const int m_phi = 2 * mesh;
    const double d_rho = 1.0 / m_rho;
    const double d_theta = std::numbers::pi / m_theta;
    const double d_phi = 2.0 * std::numbers::pi / m_phi;

    auto point = [](double rho, double theta, double ph) -> Vec3 {
        return {rho * std::sin(theta) * std::cos(ph), rho * std::sin(theta) * std::sin(ph), rho * std::cos(theta)};
    };
    auto field = [&](double rho, double theta, double ph) {
        return hopf(psi_lambda(ball_to_s3(point(rho, theta, ph)), dil));
    };
    const double h_rho = fd_fraction * d_rho;
    const double h_theta = fd_fraction * d_theta;
    const double h_phi = fd_fraction * d_phi;

    std::vector<double> velocity_slices(static_cast<std::size_t>(m_rho), 0.0);
    const double director = 0.5 * parallel_slices(m_rho, [&](int i) {
        const double rho = (i + 0.5) * d_rho;
        std::vector<double> density(static_cast<std::size_t>(m_theta) * m_phi);
        std::vector<double> speed2(density.size());
        std::vector<double> weight(density.size());
        std::size_t idx = 0;
        for (int j = 0; j < m_theta; ++j) {
            const double theta = (j + 0.5) * d_theta;
            const double s_theta = std::sin(theta);
            for (int k = 0; k < m_phi; ++k, ++idx) {
                const double ph = (k + 0.5) * d_phi;
                const double g_rho =
                    dist2(field(rho + h_rho, theta, ph), field(rho - h_rho, theta, ph)) / (4.0 * h_rho * h_rho);
                const double g_theta = dist2(field(rho, theta + h_theta, ph), field(rho, theta - h_theta, ph)) /
                                       (4.0 * h_theta * h_theta);
                const double g_phi =
                    dist2(field(rho, theta, ph + h_phi), field(rho, theta, ph - h_phi)) / (4.0 * h_phi * h_phi);
                density[idx] = g_rho + g_theta / (rho * rho) + g_phi / (rho * rho * s_theta * s_theta);
                const Vec3 u = sample_velocity(point(rho, theta, ph));
                speed2[idx] = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
                weight[idx] = rho * rho * s_theta * d_rho * d_theta * d_phi;
            }
        }
        velocity_slices[static_cast<std::size_t>(i)] = simd::dot(weight, speed2);
        return simd::dot(weight, density);
    });

    InitialDataEnergy out;
    out.lambda = lambda;
    out.mesh = mesh;
    out.director = director;
    if (include_velocity) {
        double v = 0.0;
        for (double s : velocity_slices) v += s;
        out.velocity = 0.5 * v / (lambda * lambda);
    }
    out.total = out.director + out.velocity;
    out.under_resolved = lambda > mesh / 8.0;
    return out;
}

}  // namespace nematic::hopf
