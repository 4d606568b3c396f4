#include "nematic/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nematic/barriers.hpp"
#include "nematic/poiseuille.hpp"

namespace nematic::harness {

namespace pt = boost::property_tree;

namespace {

constexpr double pi = std::numbers::pi;

struct ExperimentName {
    Experiment e;
    std::string_view name;
};

constexpr ExperimentName experiment_names[] = {
    {Experiment::axisym_global, "axisym_global"},
    {Experiment::axisym_blowup, "axisym_blowup"},
    {Experiment::barrier_check, "barrier_check"},
    {Experiment::poiseuille_counterexample, "poiseuille_counterexample"},
    {Experiment::poiseuille_generic, "poiseuille_generic"},
    {Experiment::hopf_decay, "hopf_decay"},
};

struct PresetName {
    Preset p;
    std::string_view name;
};

constexpr PresetName preset_names[] = {
    {Preset::linear, "linear"},
    {Preset::scaled_linear, "scaled_linear"},
    {Preset::bubble, "bubble"},
    {Preset::table, "table"},
    {Preset::gaussian_shear, "gaussian_shear"},
};

bool is_axisym(Experiment e) {
    return e == Experiment::axisym_global || e == Experiment::axisym_blowup ||
           e == Experiment::barrier_check;
}

bool is_poiseuille(Experiment e) {
    return e == Experiment::poiseuille_counterexample || e == Experiment::poiseuille_generic;
}

// Keys each experiment understands, by section ("" is the top level).
std::map<std::string, std::set<std::string>> allowed_keys(Experiment e) {
    std::map<std::string, std::set<std::string>> k;
    k[""] = {"experiment"};
    k["output"] = {"dir", "stride", "plots"};
    if (is_axisym(e)) {
        k["coefficients"] = {"mu1", "mu2", "mu3", "mu4", "mu5", "mu6"};
        k["grid"] = {"n"};
        k["time"] = {"scheme", "dt", "t_end"};
        k["initial"] = {"preset", "beta0", "amplitude", "outer", "table"};
        k["blowup"] = {"cap", "local_radius"};
        if (e == Experiment::axisym_blowup) k["blowup"].insert("clip_factor");
        if (e == Experiment::barrier_check) k["barrier"] = {"c", "safety"};
    } else if (is_poiseuille(e)) {
        k["coefficients"] = {"mu1", "mu2", "mu3", "mu4", "mu5", "mu6"};
        k["grid"] = {"n", "half_length"};
        k["time"] = {"dt", "t_end"};
        k["poiseuille"] = {"snapshots"};
        if (e == Experiment::poiseuille_generic) {
            k["poiseuille"].insert("a");
            k["initial"] = {"preset", "amplitude", "phi_amplitude"};
        }
    } else {
        k["hopf"] = {"lambdas", "mesh", "initial_data", "include_velocity"};
    }
    return k;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last) {
        throw ConfigError("parse", std::string(key) + ": not a number: '" + text + "'");
    }
    if (!std::isfinite(v)) throw ConfigError("parse", std::string(key) + ": must be finite");
    return v;
}

int parse_int(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("parse", std::string(key) + ": not an integer: '" + text + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "true" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "no" || text == "0") return false;
    throw ConfigError("parse", std::string(key) + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// "r:phi, r:phi, ..."
std::vector<std::pair<double, double>> parse_table(std::string_view raw) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& item : split(raw, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) {
            throw ConfigError("parse", "initial.table: expected r:phi pairs, got '" + item + "'");
        }
        rows.emplace_back(parse_double("initial.table", parts[0]),
                          parse_double("initial.table", parts[1]));
    }
    return rows;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> raw(const std::string& section, const std::string& key) const {
        const pt::ptree* node = &tree_;
        if (!section.empty()) {
            auto it = tree_.find(section);
            if (it == tree_.not_found()) return std::nullopt;
            node = &it->second;
        }
        auto it = node->find(key);
        if (it == node->not_found()) return std::nullopt;
        return it->second.data();
    }

    bool has_section(const std::string& section) const {
        return tree_.find(section) != tree_.not_found();
    }

    template <class T, class Parse>
    void get(const std::string& section, const std::string& key, T& out, Parse parse) const {
        if (auto v = raw(section, key)) out = parse(section + "." + key, *v);
    }

    void number(const std::string& s, const std::string& k, double& out) const {
        get(s, k, out, parse_double);
    }
    void number(const std::string& s, const std::string& k, std::optional<double>& out) const {
        if (auto v = raw(s, k)) out = parse_double(s + "." + k, *v);
    }
    void integer(const std::string& s, const std::string& k, int& out) const {
        get(s, k, out, parse_int);
    }
    void flag(const std::string& s, const std::string& k, bool& out) const {
        get(s, k, out, parse_bool);
    }

private:
    const pt::ptree& tree_;
};

void check_keys(const pt::ptree& tree, Experiment e) {
    const auto allowed = allowed_keys(e);
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            if (node.data().empty() && allowed.count(name) && !name.empty()) continue;
            if (!allowed.at("").count(name)) {
                throw ConfigError("unknown_key", "unknown top-level key '" + name + "'");
            }
            continue;
        }
        auto sec = allowed.find(name);
        if (sec == allowed.end() || name.empty()) {
            throw ConfigError("unknown_key", "section [" + name + "] is not used by " +
                                                 std::string(to_string(e)));
        }
        for (const auto& [key, value] : node) {
            if (!value.empty()) {
                throw ConfigError("parse", "nested keys are not supported: " + name + "." + key);
            }
            if (!sec->second.count(key)) {
                throw ConfigError("unknown_key", "unknown key " + name + "." + key);
            }
        }
    }
}

void apply_defaults(ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::axisym_global:
        case Experiment::barrier_check:
            cfg.time.t_end = 2.0;
            cfg.initial.preset = Preset::linear;
            break;
        case Experiment::axisym_blowup:
            cfg.time.t_end = 0.35;
            cfg.initial.preset = Preset::bubble;
            cfg.output.stride = 10;
            break;
        case Experiment::poiseuille_counterexample:
            cfg.coefficients = LeslieCoefficients::simplified();
            cfg.grid.n = 200;
            cfg.grid.half_length = 5.0;
            cfg.time.t_end = 1.0;
            break;
        case Experiment::poiseuille_generic:
            cfg.coefficients = LeslieCoefficients::simplified();
            cfg.grid.n = 2048;
            cfg.grid.half_length = 10.0;
            cfg.time.dt = 1e-5;
            cfg.time.t_end = 0.05;
            cfg.initial.preset = Preset::gaussian_shear;
            break;
        case Experiment::hopf_decay:
            break;
    }
}

Experiment parse_experiment(const std::string& text) {
    for (const auto& [e, name] : experiment_names) {
        if (name == text) return e;
    }
    throw ConfigError("unknown_experiment", "unknown experiment '" + text + "'");
}

Preset parse_preset(const std::string& text) {
    for (const auto& [p, name] : preset_names) {
        if (name == text) return p;
    }
    throw ConfigError("unknown_preset", "unknown initial-data preset '" + text + "'");
}

template <class F>
void precondition(F&& f) {
    try {
        f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("precondition", e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError("precondition", e.what());
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("precondition", what);
}

axisym::RadialState radial_initial(const ExperimentConfig& cfg) {
    axisym::RadialGrid grid(cfg.grid.n);
    return axisym::RadialState::sample(grid, [&](double r) { return cfg.initial.radial(r); });
}

void validate_initial_radial(const ExperimentConfig& cfg) {
    const auto& in = cfg.initial;
    switch (in.preset) {
        case Preset::linear:
            break;
        case Preset::scaled_linear:
            require(std::isfinite(in.amplitude), "initial.amplitude must be finite");
            break;
        case Preset::bubble:
            require(in.beta0 > 0.0, "initial.beta0 must be positive");
            require(std::isfinite(in.outer), "initial.outer must be finite");
            break;
        case Preset::table: {
            const auto& t = in.table;
            require(t.size() >= 2, "initial.table needs at least two points");
            for (std::size_t i = 1; i < t.size(); ++i) {
                require(t[i].first > t[i - 1].first, "initial.table: r must be strictly increasing");
            }
            require(t.front().first <= 0.0 && t.back().first >= 1.0,
                    "initial.table must cover r in [0, 1]");
            break;
        }
        case Preset::gaussian_shear:
            throw ConfigError("unknown_preset", "preset gaussian_shear is for Poiseuille runs only");
    }
}

}  // namespace

std::string_view to_string(Experiment e) noexcept {
    for (const auto& [x, name] : experiment_names) {
        if (x == e) return name;
    }
    return "?";
}

std::string_view to_string(Preset p) noexcept {
    for (const auto& [x, name] : preset_names) {
        if (x == p) return name;
    }
    return "?";
}

double InitialData::radial(double r) const {
    switch (preset) {
        case Preset::linear:
            return (pi - 0.1) * r;
        case Preset::scaled_linear:
            return amplitude * r;
        case Preset::bubble:
            return 2.0 * std::atan(r / beta0) + (outer - 2.0 * std::atan(1.0 / beta0)) * r;
        case Preset::table: {
            auto it = std::lower_bound(table.begin(), table.end(), r,
                                       [](const auto& row, double x) { return row.first < x; });
            if (it == table.begin()) return it->second;
            if (it == table.end()) return table.back().second;
            const auto& [r1, p1] = *it;
            const auto& [r0, p0] = *(it - 1);
            return p0 + (p1 - p0) * (r - r0) / (r1 - r0);
        }
        case Preset::gaussian_shear:
            break;
    }
    throw ConfigError("unknown_preset", "preset is not a radial profile");
}

double ExperimentConfig::time_step() const {
    if (time.dt) return *time.dt;
    if (is_axisym(experiment)) {
        axisym::RadialGrid g(grid.n);
        return axisym::SolverParams::defaults(time.scheme, g, coefficients.lambda1(), time.t_end).dt;
    }
    if (is_poiseuille(experiment)) {
        poiseuille::IntervalGrid g(grid.half_length, grid.n);
        return poiseuille::stable_dt(coefficients, g.dx());
    }
    return 0.0;
}

void validate_config(const ExperimentConfig& cfg) {
    require(cfg.output.stride >= 1, "output.stride must be at least 1");
    require(!cfg.output.dir.empty(), "output.dir must not be empty");

    if (cfg.experiment == Experiment::hopf_decay) {
        const auto& h = cfg.hopf;
        require(!h.lambdas.empty(), "hopf.lambdas must not be empty");
        for (std::size_t i = 0; i < h.lambdas.size(); ++i) {
            require(h.lambdas[i] > 0.0, "hopf.lambdas must be positive");
            require(i == 0 || h.lambdas[i] > h.lambdas[i - 1], "hopf.lambdas must be increasing");
        }
        require(h.mesh >= 16, "hopf.mesh must be at least 16");
        return;
    }

    ValidationResult v;
    try {
        v = validate(cfg.coefficients);
    } catch (const NonFiniteCoefficient& e) {
        throw ConfigError("invalid_coefficients", e.what());
    }
    if (!v.ok()) throw ConfigError("invalid_coefficients", "coefficients: " + v.summary());

    require(cfg.time.t_end > 0.0, "time.t_end must be positive");
    require(!cfg.time.dt || *cfg.time.dt > 0.0, "time.dt must be positive");

    if (is_poiseuille(cfg.experiment)) {
        if (cfg.experiment == Experiment::poiseuille_counterexample) {
            require(cfg.coefficients == LeslieCoefficients::simplified(),
                    "the counterexample is posed for the simplified coefficients (0, -1, 1, 3, 0, 0)");
        }
        require(cfg.poiseuille.snapshots >= 3, "poiseuille.snapshots must be at least 3");
        precondition([&] {
            poiseuille::IntervalGrid g(cfg.grid.half_length, cfg.grid.n);
            const double dt = cfg.time_step();
            const double eff = poiseuille::effective_dt(dt, cfg.time.t_end, cfg.poiseuille.snapshots);
            const double bound = poiseuille::stable_dt(cfg.coefficients, g.dx());
            if (eff > bound * (1.0 + 1e-12)) {
                std::ostringstream os;
                os << "time.dt = " << dt << " exceeds the stability bound " << bound;
                throw ConfigError("precondition", os.str());
            }
        });
        return;
    }

    precondition([&] {
        axisym::RadialGrid grid(cfg.grid.n);
        validate_initial_radial(cfg);
        const auto initial = radial_initial(cfg);
        axisym::SolverParams p;
        p.scheme = cfg.time.scheme;
        p.dt = cfg.time_step();
        p.t_end = cfg.time.t_end;
        axisym::check_params(p, grid, cfg.coefficients.lambda1());
        const auto steps = static_cast<long long>(std::ceil(p.t_end / p.dt - 1e-9));
        const long long stored = 1 + steps / cfg.output.stride + (steps % cfg.output.stride ? 1 : 0);
        require(stored >= 10, "output.stride leaves fewer than 10 snapshots; blow-up detection needs 10");

        require(!cfg.blowup.cap || *cfg.blowup.cap > 0.0, "blowup.cap must be positive");
        require(cfg.blowup.local_radius >= 2.0 * grid.dr() && cfg.blowup.local_radius <= 1.0,
                "blowup.local_radius must lie in [2 dr, 1]");
        require(cfg.blowup.clip_factor > 0.0, "blowup.clip_factor must be positive");

        if (cfg.experiment == Experiment::barrier_check) {
            require(cfg.barrier.safety > 0.0 && cfg.barrier.safety <= 1.0,
                    "barrier.safety must lie in (0, 1]");
            const double c = cfg.barrier.c ? *cfg.barrier.c
                                           : barriers::fit_barrier_c(initial, cfg.barrier.safety);
            require(c > 0.0, "barrier.c must be positive");
            const auto lo = barriers::BarrierSpec::subsolution(c, cfg.coefficients);
            const auto hi = barriers::BarrierSpec::supersolution(c, cfg.coefficients);
            const double tol = 10.0 * (grid.dr() * grid.dr() + p.dt);
            for (int i = 0; i <= grid.n_cells(); ++i) {
                const double r = grid.r(i);
                const double phi = initial.phi[static_cast<std::size_t>(i)];
                if (barriers::eval(lo, r, 0.0) - phi > tol || phi - barriers::eval(hi, r, 0.0) > tol) {
                    std::ostringstream os;
                    os << "barrier.c = " << c << " does not bracket the initial data at r = " << r;
                    throw ConfigError("precondition", os.str());
                }
            }
        }
        if (cfg.experiment == Experiment::axisym_blowup && cfg.initial.preset == Preset::bubble) {
            barriers::BarrierSpec::eta(cfg.initial.beta0, cfg.coefficients);
            require(cfg.initial.outer > pi, "initial.outer must exceed pi for the blow-up data");
        }
    });
}

ExperimentConfig parse_config(std::string_view text) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("parse", e.what());
    }
    Reader rd(tree);

    ExperimentConfig cfg;
    const auto name = rd.raw("", "experiment");
    if (!name) throw ConfigError("missing_key", "config must name an experiment");
    cfg.experiment = parse_experiment(trim(*name));
    check_keys(tree, cfg.experiment);
    apply_defaults(cfg);

    if (rd.has_section("coefficients")) {
        auto& c = cfg.coefficients;
        const char* names[] = {"mu1", "mu2", "mu3", "mu4", "mu5", "mu6"};
        double* slots[] = {&c.mu1, &c.mu2, &c.mu3, &c.mu4, &c.mu5, &c.mu6};
        for (int i = 0; i < 6; ++i) {
            const auto v = rd.raw("coefficients", names[i]);
            if (!v) {
                throw ConfigError("missing_key", std::string("coefficients.") + names[i] + " is required");
            }
            *slots[i] = parse_double(std::string("coefficients.") + names[i], *v);
        }
    } else if (cfg.experiment != Experiment::hopf_decay && !is_poiseuille(cfg.experiment)) {
        throw ConfigError("missing_key", "section [coefficients] is required");
    }

    rd.integer("grid", "n", cfg.grid.n);
    rd.number("grid", "half_length", cfg.grid.half_length);
    if (auto s = rd.raw("time", "scheme")) {
        try {
            cfg.time.scheme = axisym::parse_scheme(trim(*s));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("parse", std::string("time.scheme: ") + e.what());
        }
    }
    rd.number("time", "dt", cfg.time.dt);
    rd.number("time", "t_end", cfg.time.t_end);

    if (auto p = rd.raw("initial", "preset")) cfg.initial.preset = parse_preset(trim(*p));
    rd.number("initial", "beta0", cfg.initial.beta0);
    rd.number("initial", "amplitude", cfg.initial.amplitude);
    rd.number("initial", "phi_amplitude", cfg.initial.phi_amplitude);
    cfg.initial.outer = 1.05 * pi;
    rd.number("initial", "outer", cfg.initial.outer);
    if (auto t = rd.raw("initial", "table")) cfg.initial.table = parse_table(*t);
    if (cfg.initial.preset == Preset::table && cfg.initial.table.empty()) {
        throw ConfigError("missing_key", "preset table needs initial.table");
    }
    if (cfg.experiment == Experiment::poiseuille_generic && cfg.initial.preset != Preset::gaussian_shear) {
        throw ConfigError("unknown_preset", "Poiseuille runs support the gaussian_shear preset only");
    }

    rd.number("barrier", "c", cfg.barrier.c);
    rd.number("barrier", "safety", cfg.barrier.safety);
    rd.number("blowup", "cap", cfg.blowup.cap);
    rd.number("blowup", "local_radius", cfg.blowup.local_radius);
    rd.number("blowup", "clip_factor", cfg.blowup.clip_factor);
    rd.number("poiseuille", "a", cfg.poiseuille.a);
    rd.integer("poiseuille", "snapshots", cfg.poiseuille.snapshots);

    if (auto l = rd.raw("hopf", "lambdas")) {
        cfg.hopf.lambdas.clear();
        for (const auto& item : split(*l, ',')) cfg.hopf.lambdas.push_back(parse_double("hopf.lambdas", item));
    }
    rd.integer("hopf", "mesh", cfg.hopf.mesh);
    rd.flag("hopf", "initial_data", cfg.hopf.initial_data);
    rd.flag("hopf", "include_velocity", cfg.hopf.include_velocity);

    if (auto d = rd.raw("output", "dir")) cfg.output.dir = trim(*d);
    rd.integer("output", "stride", cfg.output.stride);
    rd.flag("output", "plots", cfg.output.plots);

    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string serialize(const ExperimentConfig& cfg) {
    std::ostringstream os;
    auto num = [&](const char* key, double v) { os << key << " = " << format_double(v) << '\n'; };
    const auto e = cfg.experiment;
    os << "experiment = " << to_string(e) << '\n';

    if (e != Experiment::hopf_decay) {
        const auto& c = cfg.coefficients;
        os << "\n[coefficients]\n";
        num("mu1", c.mu1);
        num("mu2", c.mu2);
        num("mu3", c.mu3);
        num("mu4", c.mu4);
        num("mu5", c.mu5);
        num("mu6", c.mu6);

        os << "\n[grid]\n";
        os << "n = " << cfg.grid.n << '\n';
        if (is_poiseuille(e)) num("half_length", cfg.grid.half_length);

        os << "\n[time]\n";
        if (is_axisym(e)) os << "scheme = " << axisym::to_string(cfg.time.scheme) << '\n';
        if (cfg.time.dt) num("dt", *cfg.time.dt);
        num("t_end", cfg.time.t_end);
    }

    if (e != Experiment::hopf_decay && e != Experiment::poiseuille_counterexample) {
        const auto& in = cfg.initial;
        os << "\n[initial]\n";
        os << "preset = " << to_string(in.preset) << '\n';
        switch (in.preset) {
            case Preset::scaled_linear:
                num("amplitude", in.amplitude);
                break;
            case Preset::bubble:
                num("beta0", in.beta0);
                num("outer", in.outer);
                break;
            case Preset::table: {
                os << "table = ";
                for (std::size_t i = 0; i < in.table.size(); ++i) {
                    if (i) os << ", ";
                    os << format_double(in.table[i].first) << ':' << format_double(in.table[i].second);
                }
                os << '\n';
                break;
            }
            case Preset::gaussian_shear:
                num("amplitude", in.amplitude);
                num("phi_amplitude", in.phi_amplitude);
                break;
            case Preset::linear:
                break;
        }
    }

    if (e == Experiment::barrier_check) {
        os << "\n[barrier]\n";
        if (cfg.barrier.c) num("c", *cfg.barrier.c);
        num("safety", cfg.barrier.safety);
    }
    if (is_axisym(e)) {
        os << "\n[blowup]\n";
        if (cfg.blowup.cap) num("cap", *cfg.blowup.cap);
        num("local_radius", cfg.blowup.local_radius);
        if (e == Experiment::axisym_blowup) num("clip_factor", cfg.blowup.clip_factor);
    }
    if (is_poiseuille(e)) {
        os << "\n[poiseuille]\n";
        if (e == Experiment::poiseuille_generic) num("a", cfg.poiseuille.a);
        os << "snapshots = " << cfg.poiseuille.snapshots << '\n';
    }
    if (e == Experiment::hopf_decay) {
        os << "\n[hopf]\nlambdas = ";
        for (std::size_t i = 0; i < cfg.hopf.lambdas.size(); ++i) {
            if (i) os << ", ";
            os << format_double(cfg.hopf.lambdas[i]);
        }
        os << "\nmesh = " << cfg.hopf.mesh << '\n';
        os << "initial_data = " << (cfg.hopf.initial_data ? "true" : "false") << '\n';
        os << "include_velocity = " << (cfg.hopf.include_velocity ? "true" : "false") << '\n';
    }

    os << "\n[output]\n";
    os << "dir = " << cfg.output.dir << '\n';
    os << "stride = " << cfg.output.stride << '\n';
    os << "plots = " << (cfg.output.plots ? "true" : "false") << '\n';
    return os.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize(cfg)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static constexpr char digits[] = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

}  // namespace nematic::harness
