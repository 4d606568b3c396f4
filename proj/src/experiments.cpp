#include "nematic/experiments.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "nematic/barriers.hpp"
#include "nematic/blowup.hpp"
#include "nematic/hopf.hpp"
#include "nematic/poiseuille.hpp"
#include "nematic/radial.hpp"
#include "nematic/svg.hpp"
#include "nematic/timeseries.hpp"

namespace nematic::harness {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Json violation_json(const barriers::Violation& v) {
    return Json{{"worst", v.worst}, {"t", v.t}, {"r", v.r}};
}

Json ordering_json(const barriers::OrderingReport& rep) {
    Json j;
    j["lower_kind"] = barriers::to_string(rep.lower_kind);
    j["upper_kind"] = rep.upper_kind ? Json(barriers::to_string(*rep.upper_kind)) : Json(nullptr);
    j["tolerance"] = rep.tolerance;
    j["lower"] = violation_json(rep.lower);
    j["upper"] = rep.upper_kind ? violation_json(rep.upper) : Json(nullptr);
    j["snapshots_checked"] = rep.snapshots_checked;
    j["snapshots_skipped"] = rep.snapshots_skipped;
    j["passed"] = rep.passed;
    return j;
}

// Collects files and their report entries.
class Collector {
public:
    Collector(Artifacts& a, const ExperimentConfig& cfg) : a_(a), cfg_(cfg) {
        a_.report["series"] = Json::array();
    }

    void series(const std::string& stem, TimeSeries ts, PlotKind kind, const std::string& title) {
        ts.set_meta("config_hash", config_hash(cfg_));
        Json entry;
        entry["file"] = stem + ".csv";
        entry["columns"] = ts.columns();
        entry["rows"] = ts.size();
        Json meta = Json::object();
        for (const auto& [k, v] : ts.meta()) meta[k] = v;
        entry["metadata"] = meta;
        a_.files.emplace_back(stem + ".csv", ts.to_csv());
        if (cfg_.output.plots && !ts.empty()) {
            try {
                const auto plot = emit_plot(ts, kind, title);
                a_.files.emplace_back(stem + ".svg", plot.svg);
                entry["plot"] = Json{{"file", stem + ".svg"},
                                     {"kind", to_string(kind)},
                                     {"dropped_points", plot.dropped}};
            } catch (const SeriesError& e) {
                entry["plot"] = Json{{"file", nullptr}, {"error", e.what()}};
            }
        }
        a_.report["series"].push_back(std::move(entry));
    }

private:
    Artifacts& a_;
    const ExperimentConfig& cfg_;
};

std::string grid_label(int n, double h) {
    std::ostringstream os;
    os << "n=" << n << " h=" << format_double(h);
    return os.str();
}

// ---- axisymmetric runs ------------------------------------------------------

struct RadialRun {
    axisym::RadialState initial;
    axisym::SolverParams params;
    axisym::Trace trace;
};

RadialRun run_radial(const ExperimentConfig& cfg, double clip_guard) {
    axisym::RadialGrid grid(cfg.grid.n);
    auto initial = axisym::RadialState::sample(grid, [&](double r) { return cfg.initial.radial(r); });
    axisym::SolverParams p;
    p.scheme = cfg.time.scheme;
    p.dt = cfg.time_step();
    p.t_end = cfg.time.t_end;
    p.clip_guard = clip_guard;
    auto trace = axisym::simulate(initial, cfg.coefficients, p, cfg.output.stride);
    return {std::move(initial), p, std::move(trace)};
}

TimeSeries radial_series(const ExperimentConfig& cfg, const RadialRun& run) {
    TimeSeries ts({"t", "phi_r_origin", "e_total", "e_grad", "e_sin", "local_energy_R"});
    const double dr = run.trace.grid.dr();
    for (std::size_t k = 0; k < run.trace.snapshots.size(); ++k) {
        const auto& snap = run.trace.snapshots[k];
        if (!all_finite(snap.phi)) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            ts.add_row({snap.t, nan, nan, nan, nan, nan});
            continue;
        }
        const auto state = run.trace.state(k);
        const auto e = axisym::energy(state);
        ts.add_row({snap.t, blowup::origin_gradient(snap.phi, dr), e.total, e.grad, e.sin,
                    axisym::local_energy(state, cfg.blowup.local_radius)});
    }
    ts.set_meta("grid", grid_label(cfg.grid.n, dr));
    ts.set_meta("scheme", std::string(axisym::to_string(cfg.time.scheme)));
    ts.set_meta("dt", format_double(run.params.dt));
    ts.set_meta("local_energy_radius", format_double(cfg.blowup.local_radius));
    return ts;
}

Json solver_json(const RadialRun& run) {
    Json j;
    j["scheme"] = axisym::to_string(run.params.scheme);
    j["n"] = run.trace.grid.n_cells();
    j["dr"] = run.trace.grid.dr();
    j["dt"] = run.params.dt;
    j["t_end"] = run.params.t_end;
    j["snapshots"] = run.trace.snapshots.size();
    j["t_last"] = run.trace.snapshots.back().t;
    j["halt"] = axisym::to_string(run.trace.halt);
    j["halt_message"] = run.trace.halt_message;
    return j;
}

// Discrete maximum principle: -tol <= phi <= pi + tol, tol = 10 dr^2, for data in [0, pi].
Json max_principle_json(const RadialRun& run) {
    const double dr = run.trace.grid.dr();
    const double tol = 10.0 * dr * dr;
    const auto& phi0 = run.initial.phi;
    const bool applicable = *std::min_element(phi0.begin(), phi0.end()) >= 0.0 &&
                            *std::max_element(phi0.begin(), phi0.end()) <= pi;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : run.trace.snapshots) {
        if (!all_finite(s.phi)) continue;
        lo = std::min(lo, *std::min_element(s.phi.begin(), s.phi.end()));
        hi = std::max(hi, *std::max_element(s.phi.begin(), s.phi.end()));
    }
    Json j;
    j["applicable"] = applicable;
    j["min_phi"] = lo;
    j["max_phi"] = hi;
    j["tolerance"] = tol;
    j["passed"] = applicable ? Json(lo >= -tol && hi <= pi + tol) : Json(nullptr);
    return j;
}

Json detection_json(const blowup::BlowupReport& br) {
    Json j;
    j["detected"] = br.detected;
    j["hard_overflow"] = br.hard_overflow;
    j["t_detect"] = br.detected ? Json(br.t_detect) : Json(nullptr);
    j["cap"] = br.cap;
    j["gradient_at_detect"] = br.detected ? Json(br.gradient_at_detect) : Json(nullptr);
    j["gradient_final"] = br.grad_history.empty() ? Json(nullptr) : Json(br.grad_history.back().value);
    return j;
}

Json energy_json(const TimeSeries& ts) {
    const auto e = ts.column(2);
    double peak = -std::numeric_limits<double>::infinity();
    bool finite = true;
    for (double v : e) {
        finite = finite && std::isfinite(v);
        if (std::isfinite(v)) peak = std::max(peak, v);
    }
    return Json{{"initial", e.front()}, {"final", e.back()}, {"max", peak}, {"bounded", finite}};
}

bool solver_failed(const axisym::Trace& tr) {
    return tr.halt == axisym::HaltReason::non_finite || tr.halt == axisym::HaltReason::pivot_breakdown;
}

void axisym_global(const ExperimentConfig& cfg, Artifacts& a, Collector& out) {
    const auto run = run_radial(cfg, std::numeric_limits<double>::infinity());
    const auto ts = radial_series(cfg, run);
    const auto br = blowup::detect(run.trace, cfg.blowup.cap, cfg.blowup.local_radius);

    Json& r = a.report["result"];
    r["solver"] = solver_json(run);
    r["detection"] = detection_json(br);
    r["max_principle"] = max_principle_json(run);
    r["energy"] = energy_json(ts);
    if (solver_failed(run.trace)) a.exit_code = exit_halted;

    std::ostringstream os;
    os << "detected=" << (br.detected ? "true" : "false")
       << " max_phi=" << format_double(r["max_principle"]["max_phi"].get<double>());
    a.summary = os.str();

    out.series("timeseries", ts, PlotKind::linear, "origin gradient and energies");
}

void axisym_blowup(const ExperimentConfig& cfg, Artifacts& a, Collector& out) {
    axisym::RadialGrid grid(cfg.grid.n);
    const auto run = run_radial(cfg, cfg.blowup.clip_factor / grid.dr());
    const auto ts = radial_series(cfg, run);
    const auto br = blowup::detect(run.trace, cfg.blowup.cap, cfg.blowup.local_radius);

    Json& r = a.report["result"];
    r["solver"] = solver_json(run);
    r["detection"] = detection_json(br);
    r["profile_fit_error"] = br.profile_fit_error;
    r["profile_time"] = br.profile_time;
    Json law;
    try {
        const auto fit = blowup::fit_beta_law(br);
        law = Json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2},
                   {"samples", fit.samples}};
    } catch (const blowup::InsufficientData& e) {
        law = Json{{"slope", nullptr}, {"r2", nullptr}, {"samples", br.beta_fit.size()},
                   {"note", e.what()}};
    }
    r["beta_law"] = law;
    r["local_radius"] = br.local_radius;

    if (cfg.initial.preset == Preset::bubble) {
        const auto eta = barriers::BarrierSpec::eta(cfg.initial.beta0, cfg.coefficients);
        const barriers::BetaClock clock(cfg.initial.beta0);
        r["blowup_time"] = clock.blowup_time();

        // Comparison with eta up to detection.
        axisym::Trace upto = run.trace;
        const double t_stop = br.detected ? br.t_detect : std::numeric_limits<double>::infinity();
        std::erase_if(upto.snapshots, [&](const axisym::Snapshot& s) { return s.t > t_stop; });
        r["eta_ordering"] = ordering_json(barriers::check_lower(eta, upto));

        // phi_r(0) >= 0.95 * 2 / beta(t) before detection.
        double worst = std::numeric_limits<double>::infinity();
        double worst_t = 0.0;
        for (const auto& h : br.grad_history) {
            if (h.t >= t_stop || !(h.t < clock.blowup_time())) continue;
            const double ratio = h.value / (2.0 / clock.beta(h.t));
            if (ratio < worst) {
                worst = ratio;
                worst_t = h.t;
            }
        }
        r["subsolution_domination"] =
            std::isfinite(worst)
                ? Json{{"min_ratio", worst}, {"t", worst_t}, {"passed", worst >= 0.95}}
                : Json{{"min_ratio", nullptr}, {"t", nullptr}, {"passed", nullptr}};
    }
    if (solver_failed(run.trace) && !br.detected) a.exit_code = exit_halted;
    if (run.trace.halt == axisym::HaltReason::clip_guard && !br.detected) a.exit_code = exit_halted;

    std::ostringstream os;
    os << "detected=" << (br.detected ? "true" : "false");
    if (br.detected) os << " t_detect=" << format_double(br.t_detect);
    os << " profile_fit_error=" << format_double(br.profile_fit_error);
    a.summary = os.str();

    out.series("timeseries", ts, PlotKind::linear, "origin gradient and energies");

    TimeSeries grad({"t", "phi_r_origin"});
    for (const auto& h : br.grad_history) grad.add_row({h.t, h.value});
    grad.set_meta("cap", format_double(br.cap));
    out.series("gradient", grad, PlotKind::semilog_y, "origin gradient");

    TimeSeries beta({"t", "beta_hat", "beta_hat_cbrt"});
    for (const auto& b : br.beta_fit) beta.add_row({b.t, b.value, std::cbrt(b.value)});
    out.series("beta", beta, PlotKind::linear, "bubble scale 2 / phi_r(0)");
}

void barrier_check(const ExperimentConfig& cfg, Artifacts& a, Collector& out) {
    const auto run = run_radial(cfg, std::numeric_limits<double>::infinity());
    const double c = cfg.barrier.c ? *cfg.barrier.c : barriers::fit_barrier_c(run.initial, cfg.barrier.safety);
    const auto lo = barriers::BarrierSpec::subsolution(c, cfg.coefficients);
    const auto hi = barriers::BarrierSpec::supersolution(c, cfg.coefficients);
    const auto rep = barriers::check_ordering(lo, run.trace, hi);
    const auto br = blowup::detect(run.trace, cfg.blowup.cap, cfg.blowup.local_radius);

    Json& r = a.report["result"];
    r["solver"] = solver_json(run);
    r["barrier"] = Json{{"c", c}, {"b", hi.b}, {"fitted", !cfg.barrier.c.has_value()}};
    r["ordering"] = ordering_json(rep);
    r["max_principle"] = max_principle_json(run);
    r["detection"] = detection_json(br);
    if (solver_failed(run.trace)) a.exit_code = exit_halted;
    a.summary = std::string("ordering ") + (rep.passed ? "passed" : "failed");

    TimeSeries margins({"t", "sub_minus_phi", "phi_minus_super"});
    const auto nodes = run.trace.grid.nodes();
    for (const auto& s : run.trace.snapshots) {
        double m_lo = -std::numeric_limits<double>::infinity(), m_hi = m_lo;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            m_lo = std::max(m_lo, barriers::eval(lo, nodes[i], s.t) - s.phi[i]);
            m_hi = std::max(m_hi, s.phi[i] - barriers::eval(hi, nodes[i], s.t));
        }
        margins.add_row({s.t, m_lo, m_hi});
    }
    margins.set_meta("tolerance", format_double(rep.tolerance));
    out.series("margins", margins, PlotKind::linear, "worst ordering margins");
    out.series("timeseries", radial_series(cfg, run), PlotKind::linear, "origin gradient and energies");
}

// ---- Poiseuille -------------------------------------------------------------

TimeSeries poiseuille_series(const ExperimentConfig& cfg, std::span<const poiseuille::PoiseuilleState> hist,
                             bool exact_w, double dt) {
    std::vector<std::string> cols{"t", "max_abs_phi"};
    if (exact_w) cols.emplace_back("max_w_error");
    cols.emplace_back("energy");
    cols.emplace_back("dissipation");
    TimeSeries ts(cols);
    for (const auto& s : hist) {
        std::vector<double> row{s.t, 0.0};
        for (double p : s.phi) row[1] = std::max(row[1], std::abs(p));
        if (exact_w) {
            double err = 0.0;
            const auto nodes = s.grid.nodes();
            for (std::size_t i = 0; i < nodes.size(); ++i) err = std::max(err, std::abs(s.w[i] + 2.0 * nodes[i]));
            row.push_back(err);
        }
        row.push_back(poiseuille::discrete_energy(s));
        row.push_back(poiseuille::discrete_dissipation(s, cfg.coefficients));
        ts.add_row(std::move(row));
    }
    ts.set_meta("grid", grid_label(cfg.grid.n, hist.front().grid.dx()));
    ts.set_meta("scheme", "explicit");
    ts.set_meta("dt", format_double(dt));
    return ts;
}

void poiseuille_counterexample(const ExperimentConfig& cfg, Artifacts& a, Collector& out) {
    const auto initial = poiseuille::counterexample_initial(cfg.grid.half_length, cfg.grid.n);
    const double dt = cfg.time_step();
    const auto hist = poiseuille::run(initial, cfg.coefficients, dt, cfg.time.t_end, cfg.poiseuille.snapshots);
    const double dt_eff = poiseuille::effective_dt(dt, cfg.time.t_end, cfg.poiseuille.snapshots);
    const auto rep = poiseuille::counterexample_report(hist, dt_eff);

    Json& r = a.report["result"];
    r["half_length"] = rep.half_length;
    r["n_cells"] = rep.n_cells;
    r["t_end"] = rep.t_end;
    r["dt"] = rep.dt;
    r["max_phi_initial"] = rep.max_phi_initial;
    r["max_phi_final"] = rep.max_phi_final;
    r["phi_error"] = rep.phi_error;
    r["w_error"] = rep.w_error;
    r["heat_residual"] = rep.heat_residual;
    r["maximum_principle_violated"] = rep.maximum_principle_violated;
    r["verdict"] = rep.maximum_principle_violated ? "maximum principle violated" : "maximum principle holds";

    a.summary = "max_phi_final=" + format_double(rep.max_phi_final) + " " + r["verdict"].get<std::string>();
    out.series("timeseries", poiseuille_series(cfg, hist, true, dt_eff), PlotKind::linear,
               "counterexample: phi rises with t");
}

void poiseuille_generic(const ExperimentConfig& cfg, Artifacts& a, Collector& out) {
    poiseuille::IntervalGrid grid(cfg.grid.half_length, cfg.grid.n);
    std::vector<double> w0, phi0;
    for (double x : grid.nodes()) {
        const double g = std::exp(-x * x);
        w0.push_back(cfg.initial.amplitude * x * g);
        phi0.push_back(cfg.initial.phi_amplitude * g);
    }
    const poiseuille::PoiseuilleState initial(grid, w0, phi0, cfg.poiseuille.a,
                                              poiseuille::BoundaryData::homogeneous());
    const double dt = cfg.time_step();
    const auto hist = poiseuille::run(initial, cfg.coefficients, dt, cfg.time.t_end, cfg.poiseuille.snapshots);
    const double dt_eff = poiseuille::effective_dt(dt, cfg.time.t_end, cfg.poiseuille.snapshots);
    const auto ts = poiseuille_series(cfg, hist, false, dt_eff);

    Json& r = a.report["result"];
    r["dt"] = dt_eff;
    r["n_cells"] = cfg.grid.n;
    r["half_length"] = cfg.grid.half_length;
    const auto energy = ts.column(2);
    r["energy_initial"] = energy.front();
    r["energy_final"] = energy.back();

    const bool simplified = cfg.coefficients == LeslieCoefficients::simplified();
    if (simplified) {
        const auto id = poiseuille::energy_identity_residual(hist, cfg.coefficients);
        r["energy_identity_residual"] = id.residual;
        r["boundary_flux_warning"] = id.boundary_flux_warning;
        bool nonincreasing = true;
        for (std::size_t k = 0; k + 1 < energy.size(); ++k) {
            const double span = hist[k + 1].t - hist[k].t;
            nonincreasing = nonincreasing && energy[k + 1] <= energy[k] + id.residual * span;
        }
        r["energy_nonincreasing"] = nonincreasing;
        r["heat_residual"] = cfg.poiseuille.a == 0.0 ? Json(poiseuille::heat_reduction_check(hist))
                                                     : Json(nullptr);
        a.summary = "energy_identity_residual=" + format_double(id.residual);
    } else {
        r["energy_identity_residual"] = nullptr;
        r["note"] = "the energy identity and heat reduction are checked for the simplified coefficients only";
        a.summary = "energy_final=" + format_double(energy.back());
    }
    out.series("timeseries", ts, PlotKind::linear, "Poiseuille energy and dissipation");
}

// ---- Hopf ---------------------------------------------------------------------

void hopf_decay(const ExperimentConfig& cfg, Artifacts& a, Collector& out) {
    TimeSeries table({"lambda", "energy", "mesh", "warning_flag"});
    Json rows = Json::array();
    std::vector<double> energies;
    for (double l : cfg.hopf.lambdas) {
        const auto e = hopf::dirichlet_energy_s3(l, cfg.hopf.mesh);
        energies.push_back(e.energy);
        table.add_row({l, e.energy, static_cast<double>(e.mesh), e.under_resolved ? 1.0 : 0.0});
        // |grad(H o Psi_l)|^2 integrates to 64 pi^2 l / (1 + l)^2.
        const double exact = 64.0 * pi * pi * l / ((1.0 + l) * (1.0 + l));
        rows.push_back(Json{{"lambda", l},
                            {"energy", e.energy},
                            {"closed_form", exact},
                            {"relative_error", std::abs(e.energy - exact) / exact},
                            {"under_resolved", e.under_resolved}});
    }
    table.set_meta("grid", "mesh=" + std::to_string(cfg.hopf.mesh));
    table.set_meta("scheme", "midpoint quadrature, central differences");

    bool decreasing = true;
    for (std::size_t k = 0; k + 1 < energies.size(); ++k) decreasing = decreasing && energies[k + 1] < energies[k];
    Json& r = a.report["result"];
    r["mesh"] = cfg.hopf.mesh;
    r["energies"] = rows;
    r["strictly_decreasing"] = decreasing;
    r["ratio_last_first"] = energies.back() / energies.front();

    std::ostringstream os;
    os << "strictly_decreasing=" << (decreasing ? "true" : "false")
       << " ratio=" << format_double(energies.back() / energies.front());
    a.summary = os.str();
    out.series("energy", table, PlotKind::log_log, "Dirichlet energy of H o Psi_lambda");

    if (cfg.hopf.initial_data) {
        TimeSeries id({"lambda", "velocity", "director", "total"});
        for (double l : cfg.hopf.lambdas) {
            const auto e = hopf::initial_data_energy(l, cfg.hopf.include_velocity, cfg.hopf.mesh);
            id.add_row({l, e.velocity, e.director, e.total});
        }
        id.set_meta("grid", "mesh=" + std::to_string(cfg.hopf.mesh));
        id.set_meta("scheme", "midpoint quadrature on the unit ball");
        out.series("initial_data", id, PlotKind::log_log, "initial-data energy");
    }
}

}  // namespace

Artifacts run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    Artifacts a;
    a.report["experiment"] = to_string(cfg.experiment);
    a.report["config_hash"] = config_hash(cfg);
    a.report["status"] = "ok";
    a.report["exit_code"] = 0;
    a.report["result"] = Json::object();
    Collector out(a, cfg);
    a.files.emplace_back("config.ini", serialize(cfg));

    try {
        switch (cfg.experiment) {
            case Experiment::axisym_global: axisym_global(cfg, a, out); break;
            case Experiment::axisym_blowup: axisym_blowup(cfg, a, out); break;
            case Experiment::barrier_check: barrier_check(cfg, a, out); break;
            case Experiment::poiseuille_counterexample: poiseuille_counterexample(cfg, a, out); break;
            case Experiment::poiseuille_generic: poiseuille_generic(cfg, a, out); break;
            case Experiment::hopf_decay: hopf_decay(cfg, a, out); break;
        }
    } catch (const poiseuille::StepHalt& e) {
        a.exit_code = exit_halted;
        a.report["result"]["halt_message"] = e.what();
        a.summary = std::string("halted: ") + e.what();
    } catch (const blowup::InsufficientData& e) {
        a.exit_code = exit_halted;
        a.report["result"]["halt_message"] = e.what();
        a.summary = std::string("halted: ") + e.what();
    } catch (const axisym::SolverHalt& e) {
        a.exit_code = exit_halted;
        a.report["result"]["halt_message"] = e.what();
        a.summary = std::string("halted: ") + e.what();
    }
    if (a.exit_code == exit_halted) {
        a.report["status"] = "halted";
        a.report["exit_code"] = static_cast<int>(exit_halted);
    }
    a.files.emplace_back("report.json", a.report.dump(2) + "\n");
    return a;
}

OutputDir::OutputDir(fs::path root) : root_(std::move(root)) {}

void OutputDir::write(const std::string& name, const std::string& contents) {
    const fs::path p(name);
    if (name.empty() || p.has_parent_path() || p.is_absolute() || name == "." || name == "..") {
        throw std::invalid_argument("output file name must be a plain file name: '" + name + "'");
    }
    fs::create_directories(root_);
    std::ofstream f(root_ / p, std::ios::binary | std::ios::trunc);
    f << contents;
    if (!f) throw fs::filesystem_error("cannot write", root_ / p, std::make_error_code(std::errc::io_error));
}

namespace {

int write_artifacts(const Artifacts& a, const fs::path& dir, std::ostream& log) {
    try {
        OutputDir out(dir);
        for (const auto& [name, contents] : a.files) out.write(name, contents);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return a.exit_code;
}

int run_config(ExperimentConfig cfg, const std::string& label, std::ostream& log) {
    Artifacts a;
    try {
        a = run_experiment(cfg);
    } catch (const ConfigError& e) {
        log << label << ": validation error [" << e.code() << "]: " << e.what() << '\n';
        return exit_validation;
    }
    const int code = write_artifacts(a, cfg.output.dir, log);
    log << label << ": " << to_string(cfg.experiment) << " -> " << cfg.output.dir << ": " << a.summary
        << (code == exit_ok ? "" : " (exit " + std::to_string(code) + ")") << '\n';
    return code;
}

}  // namespace

int simulate(const std::string& config_path, const RunOptions& opts, std::ostream& log) {
    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        log << config_path << ": validation error [" << e.code() << "]: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (opts.out_dir) cfg.output.dir = *opts.out_dir;
    if (opts.no_plots) cfg.output.plots = false;
    return run_config(std::move(cfg), config_path, log);
}

int validate_file(const std::string& config_path, std::ostream& out, std::ostream& log) {
    try {
        const auto cfg = load_config(config_path);
        out << serialize(cfg) << "\n# hash " << config_hash(cfg) << '\n';
        return exit_ok;
    } catch (const ConfigError& e) {
        log << config_path << ": validation error [" << e.code() << "]: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int sweep(const std::string& pattern, unsigned threads, std::ostream& log) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    std::vector<std::string> paths;
    if (rc == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
    }
    globfree(&g);
    if (paths.empty()) {
        log << "error: no config matches '" << pattern << "'\n";
        return exit_usage;
    }

    // Validate everything first; a bad config is reported and skipped.
    struct Job {
        std::string path;
        std::optional<ExperimentConfig> cfg;
        int code = exit_ok;
        std::string log;
    };
    std::vector<Job> jobs;
    std::map<fs::path, std::size_t> claimed;
    for (const auto& p : paths) {
        Job job{p, std::nullopt, exit_ok, {}};
        try {
            auto cfg = load_config(p);
            cfg.output.dir = (fs::path(cfg.output.dir) / fs::path(p).stem()).string();
            const auto key = fs::absolute(cfg.output.dir).lexically_normal();
            if (claimed.count(key)) {
                job.code = exit_validation;
                job.log = p + ": validation error [output_collision]: output directory " + cfg.output.dir +
                          " is already used by " + jobs[claimed[key]].path + "\n";
            } else {
                claimed[key] = jobs.size();
                job.cfg = std::move(cfg);
            }
        } catch (const ConfigError& e) {
            job.code = exit_validation;
            job.log = p + ": validation error [" + e.code() + "]: " + e.what() + "\n";
        } catch (const std::exception& e) {
            job.code = exit_usage;
            job.log = "error: " + std::string(e.what()) + "\n";
        }
        jobs.push_back(std::move(job));
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            auto& job = jobs[i];
            if (!job.cfg) continue;
            std::ostringstream os;
            job.code = run_config(*job.cfg, job.path, os);
            job.log = os.str();
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }

    int worst = exit_ok;
    for (const auto& job : jobs) {
        log << job.log;
        worst = std::max(worst, job.code);
    }
    return worst;
}

}  // namespace nematic::harness
