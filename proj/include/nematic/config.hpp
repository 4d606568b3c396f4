#pragma once

// Experiment configuration: one INI-style file per experiment.
//
//   experiment = axisym_blowup
//
//   [coefficients]
//   mu1 = 0
//   ...
//   [initial]
//   preset = bubble
//   beta0 = 1e-3

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nematic/coeffs.hpp"
#include "nematic/radial.hpp"

namespace nematic::harness {

enum class Experiment {
    axisym_global,
    axisym_blowup,
    barrier_check,
    poiseuille_counterexample,
    poiseuille_generic,
    hopf_decay,
};

std::string_view to_string(Experiment e) noexcept;

/// A config that cannot be run. `code` is a short stable name
/// (parse, missing_key, unknown_key, unknown_preset, invalid_coefficients,
/// precondition, ...).
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string code, const std::string& what)
        : std::invalid_argument(what), code_(std::move(code)) {}
    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

enum class Preset {
    linear,          // (pi - 0.1) r
    scaled_linear,   // amplitude r
    bubble,          // 2 atan(r / beta0) + (outer - 2 atan(1 / beta0)) r
    table,           // (r, phi) pairs, linear interpolation
    gaussian_shear,  // Poiseuille: w = amplitude x exp(-x^2), phi = phi_amplitude exp(-x^2)
};

std::string_view to_string(Preset p) noexcept;

struct InitialData {
    Preset preset = Preset::linear;
    double beta0 = 1e-3;
    double amplitude = 1.0;
    double phi_amplitude = 0.0;
    double outer = 0.0;  // bubble boundary value; 1.05 pi unless set
    std::vector<std::pair<double, double>> table;

    /// Radial presets only.
    [[nodiscard]] double radial(double r) const;

    bool operator==(const InitialData&) const = default;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::axisym_global;
    LeslieCoefficients coefficients;

    struct Grid {
        int n = 1024;
        double half_length = 5.0;

        bool operator==(const Grid&) const = default;
    } grid;

    struct Time {
        axisym::Scheme scheme = axisym::Scheme::semi_implicit;
        std::optional<double> dt;  // module default when empty
        double t_end = 2.0;

        bool operator==(const Time&) const = default;
    } time;

    InitialData initial;

    struct Barrier {
        std::optional<double> c;  // fitted to the initial data when empty
        double safety = 0.99;

        bool operator==(const Barrier&) const = default;
    } barrier;

    struct Blowup {
        std::optional<double> cap;  // 0.5 / dr when empty
        double local_radius = 0.05;
        double clip_factor = 4.0;   // halt once max |phi_r| > clip_factor / dr

        bool operator==(const Blowup&) const = default;
    } blowup;

    struct Poiseuille {
        double a = 0.0;
        int snapshots = 100;

        bool operator==(const Poiseuille&) const = default;
    } poiseuille;

    struct Hopf {
        std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0};
        int mesh = 64;
        bool initial_data = false;
        bool include_velocity = true;

        bool operator==(const Hopf&) const = default;
    } hopf;

    struct Output {
        std::string dir = "out";
        int stride = 100;
        bool plots = true;

        bool operator==(const Output&) const = default;
    } output;

    /// Resolved time step for the configured experiment.
    [[nodiscard]] double time_step() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates. Every failure is a ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Checks the owning module's preconditions. parse_config calls this.
void validate_config(const ExperimentConfig& cfg);

/// Canonical text: every key of the experiment, fixed order, shortest
/// round-trip numbers. parse_config(serialize(c)) reproduces c.
std::string serialize(const ExperimentConfig& cfg);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace nematic::harness
