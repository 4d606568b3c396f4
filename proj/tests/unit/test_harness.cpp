#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <regex>
#include <sstream>
#include <string>

#include "nematic/barriers.hpp"
#include "nematic/config.hpp"
#include "nematic/experiments.hpp"
#include "nematic/svg.hpp"
#include "nematic/timeseries.hpp"

using namespace nematic;
using namespace nematic::harness;
namespace fs = std::filesystem;

namespace {

const std::string coefficients_block =
    "[coefficients]\nmu1 = 0\nmu2 = -0.25\nmu3 = 0.75\nmu4 = 1.75\nmu5 = 0\nmu6 = 0.5\n";

std::string small_global(const std::string& extra = "") {
    return "experiment = axisym_global\n" + coefficients_block +
           "[grid]\nn = 64\n[time]\nt_end = 0.01\n[output]\nstride = 5\n" + extra;
}

std::string error_code(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.code();
    }
    return "none";
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("nematic-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::pair<double, double>>> polylines(const std::string& svg) {
    std::vector<std::vector<std::pair<double, double>>> out;
    const std::regex line(R"re(<polyline[^>]*points="([^"]*)")re");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line); it != std::sregex_iterator(); ++it) {
        std::vector<std::pair<double, double>> pts;
        std::istringstream in((*it)[1].str());
        std::string pair;
        while (in >> pair) {
            const auto comma = pair.find(',');
            pts.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
        }
        out.push_back(std::move(pts));
    }
    return out;
}

}  // namespace

TEST_CASE("config: a small global run parses with defaults filled in") {
    const auto cfg = parse_config(small_global());
    CHECK(cfg.experiment == Experiment::axisym_global);
    CHECK(cfg.grid.n == 64);
    CHECK(cfg.coefficients.lambda1() == 1.0);
    CHECK(cfg.coefficients.lambda2() == 0.5);
    CHECK(cfg.time.scheme == axisym::Scheme::semi_implicit);
    CHECK(cfg.time_step() == 1e-4);
    CHECK(cfg.initial.preset == Preset::linear);
    CHECK(cfg.output.plots);
}

TEST_CASE("config: experiment defaults") {
    const auto blow = parse_config("experiment = axisym_blowup\n" + coefficients_block);
    CHECK(blow.initial.preset == Preset::bubble);
    CHECK(blow.time.t_end == 0.35);
    CHECK(blow.initial.outer == doctest::Approx(1.05 * 3.141592653589793));
    const auto ce = parse_config("experiment = poiseuille_counterexample\n");
    CHECK(ce.coefficients == LeslieCoefficients::simplified());
    CHECK(ce.grid.n == 200);
    CHECK(ce.grid.half_length == 5.0);
    const auto hopf = parse_config("experiment = hopf_decay\n[hopf]\nlambdas = 1, 3\nmesh = 16\n");
    CHECK(hopf.hopf.lambdas == std::vector<double>{1.0, 3.0});
}

TEST_CASE("config: errors carry stable codes") {
    CHECK(error_code("") == "missing_key");
    CHECK(error_code("experiment = axisym_global\n") == "missing_key");
    CHECK(error_code("experiment = nope\n") == "unknown_experiment");
    CHECK(error_code(small_global("[initial]\npreset = spiral\n")) == "unknown_preset");
    CHECK(error_code(small_global("[grid]\nwidth = 3\n")) == "parse");  // duplicate section
    CHECK(error_code(small_global("[initial]\nflavour = 1\n")) == "unknown_key");
    CHECK(error_code(small_global("[hopf]\nmesh = 16\n")) == "unknown_key");
    CHECK(error_code("experiment = axisym_global\n[coefficients]\nmu1 = 0\nmu2 = 1\nmu3 = 0\nmu4 = 1\n"
                     "mu5 = 0\nmu6 = 0\n") == "invalid_coefficients");
    CHECK(error_code("experiment = axisym_global\n[coefficients]\nmu1 = x\nmu2 = -0.25\nmu3 = 0.75\n"
                     "mu4 = 1.75\nmu5 = 0\nmu6 = 0.5\n") == "parse");
    CHECK(error_code(small_global("[initial]\npreset = scaled_linear\namplitude = inf\n")) == "parse");
    // Explicit step far above the RK4 bound.
    CHECK(error_code("experiment = axisym_global\n" + coefficients_block +
                     "[grid]\nn = 64\n[time]\nscheme = explicit\ndt = 0.01\nt_end = 1\n") == "precondition");
    // Ten stored snapshots are required.
    CHECK(error_code("experiment = axisym_global\n" + coefficients_block +
                     "[grid]\nn = 64\n[time]\nt_end = 0.01\n[output]\nstride = 50\n") == "precondition");
    CHECK(error_code("experiment = hopf_decay\n[hopf]\nlambdas = 2, 1\n") == "precondition");
    CHECK(error_code("experiment = poiseuille_counterexample\n[time]\ndt = 1\n") == "precondition");
}

TEST_CASE("config: canonical form round-trips and hashes stably") {
    for (const std::string& text :
         {small_global(), std::string("experiment = hopf_decay\n[hopf]\nlambdas = 1, 2.5\nmesh = 16\n"),
          std::string("experiment = poiseuille_counterexample\n"),
          "experiment = axisym_blowup\n" + coefficients_block + "[initial]\nbeta0 = 1e-2\n"}) {
        const auto cfg = parse_config(text);
        const auto canon = serialize(cfg);
        const auto again = parse_config(canon);
        CHECK(again == cfg);
        CHECK(serialize(again) == canon);
        CHECK(config_hash(again) == config_hash(cfg));
        CHECK(config_hash(cfg).size() == 16);
    }
    const auto a = parse_config(small_global());
    auto b = a;
    b.time.t_end = 0.02;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-3) == "0.001");
    CHECK(format_double(2.0) == "2");
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-30, 30);
    for (int k = 0; k < 10000; ++k) {
        const double v = std::pow(10.0, u(rng)) * (k % 2 ? 1 : -1);
        REQUIRE(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("time series invariants and CSV") {
    TimeSeries ts({"t", "a", "b,c"});
    ts.add_row({0.0, 1.0, 0.1});
    ts.add_row({0.5, 2.0, 1.0 / 3.0});
    CHECK_THROWS_AS(ts.add_row({0.5, 0.0, 0.0}), SeriesError);
    CHECK_THROWS_AS(ts.add_row({0.4, 0.0, 0.0}), SeriesError);
    CHECK_THROWS_AS(ts.add_row({1.0, 0.0}), SeriesError);
    CHECK_THROWS_AS(ts.add_row({std::nan(""), 0.0, 0.0}), SeriesError);
    CHECK_THROWS_AS(TimeSeries({}), SeriesError);
    CHECK(ts.size() == 2);
    CHECK(ts.column(1) == std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS((void)ts.column(3), SeriesError);
    CHECK(ts.to_csv() == "t,a,\"b,c\"\n0,1,0.1\n0.5,2,0.3333333333333333\n");
    ts.set_meta("grid", "64");
    ts.set_meta("grid", "128");
    CHECK(ts.meta().size() == 1);
    CHECK(ts.meta()[0].second == "128");
}

TEST_CASE("svg: two points give one polyline with two vertices") {
    TimeSeries ts({"t", "y"});
    ts.add_row({0.0, 0.0});
    ts.add_row({1.0, 1.0});
    const auto plot = emit_plot(ts, PlotKind::linear, "line");
    const auto lines = polylines(plot.svg);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].size() == 2);
    CHECK(plot.dropped == 0);
    CHECK(plot.svg.rfind("<?xml", 0) == 0);
    CHECK(plot.svg.find("<svg") != std::string::npos);
    CHECK(plot.svg.find("dropped") == std::string::npos);
    CHECK(emit_plot(ts, PlotKind::linear, "line").svg == plot.svg);
    CHECK_THROWS_AS(emit_plot(TimeSeries({"t", "y"}), PlotKind::linear), SeriesError);
}

TEST_CASE("svg: points a log axis cannot show are dropped and counted") {
    TimeSeries ts({"t", "y"});
    ts.add_row({0.0, 1.0});
    ts.add_row({1.0, 0.0});
    ts.add_row({2.0, std::numeric_limits<double>::infinity()});
    ts.add_row({3.0, 10.0});
    const auto plot = emit_plot(ts, PlotKind::semilog_y);
    CHECK(plot.dropped == 2);
    CHECK(plot.svg.find("<!-- dropped points: 2 -->") != std::string::npos);
    CHECK(polylines(plot.svg)[0].size() == 2);
    TimeSeries none({"t", "y"});
    none.add_row({0.0, -1.0});
    CHECK_THROWS_AS(emit_plot(none, PlotKind::semilog_y), SeriesError);
}

TEST_CASE("svg: a blow-up gradient history reads back within half a pixel") {
    const barriers::BetaClock clock(1e-3);
    TimeSeries ts({"t", "phi_r_origin"});
    for (int k = 0; k < 290; ++k) ts.add_row({1e-3 * k, 2.0 / clock.beta(1e-3 * k)});
    const auto plot = emit_plot(ts, PlotKind::semilog_y, "gradient");
    const auto lines = polylines(plot.svg);
    REQUIRE(lines.size() == 1);
    REQUIRE(lines[0].size() == ts.size());
    const auto& f = plot.frame;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto [x, y] = lines[0][k];
        // Invert the map (log10 on the y axis) and compare in data space, then in pixels.
        const double t = f.x_lo + (x - f.left) / (f.right - f.left) * (f.x_hi - f.x_lo);
        const double g = std::pow(10.0, f.y_lo + (f.bottom - y) / (f.bottom - f.top) * (f.y_hi - f.y_lo));
        REQUIRE(std::abs(f.px(t) - f.px(ts.rows()[k][0])) <= 0.5);
        REQUIRE(g == doctest::Approx(ts.rows()[k][1]).epsilon(0.01));
        REQUIRE(std::abs(f.py(std::log10(g)) - f.py(std::log10(ts.rows()[k][1]))) <= 0.5);
        REQUIRE(x >= f.left - 0.5);
        REQUIRE(x <= f.right + 0.5);
        REQUIRE(y >= f.top - 0.5);
        REQUIRE(y <= f.bottom + 0.5);
    }
}

TEST_CASE("run_experiment is deterministic and self-describing") {
    const auto cfg = parse_config(small_global());
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    CHECK(a.files == b.files);
    CHECK(a.exit_code == exit_ok);
    CHECK(a.report["config_hash"] == config_hash(cfg));
    CHECK(a.report["experiment"] == "axisym_global");
    std::vector<std::string> names;
    for (const auto& [n, _] : a.files) names.push_back(n);
    CHECK(std::find(names.begin(), names.end(), "config.ini") != names.end());
    CHECK(std::find(names.begin(), names.end(), "timeseries.csv") != names.end());
    CHECK(std::find(names.begin(), names.end(), "timeseries.svg") != names.end());
    CHECK(std::find(names.begin(), names.end(), "report.json") != names.end());
    for (const auto& [n, contents] : a.files) {
        if (n == "config.ini") CHECK(parse_config(contents) == cfg);
    }

    auto quiet = cfg;
    quiet.output.plots = false;
    for (const auto& [n, _] : run_experiment(quiet).files) CHECK(n.find(".svg") == std::string::npos);

    const auto hopf = run_experiment(parse_config("experiment = hopf_decay\n[hopf]\nlambdas = 1, 2\nmesh = 16\n"));
    CHECK(hopf.report["result"]["strictly_decreasing"] == true);
}

TEST_CASE("output directory accepts plain names only") {
    TempDir tmp;
    OutputDir out(tmp.path / "o");
    CHECK_NOTHROW(out.write("a.csv", "x"));
    CHECK(read_file(tmp.path / "o" / "a.csv") == "x");
    CHECK_THROWS(out.write("../x", "y"));
    CHECK_THROWS(out.write("a/b", "y"));
    CHECK_THROWS(out.write("/etc/x", "y"));
    CHECK_THROWS(out.write("..", "y"));
    CHECK_THROWS(out.write("", "y"));
    CHECK_FALSE(fs::exists(tmp.path / "x"));
}

TEST_CASE("simulate: exit codes and no output for invalid configs") {
    TempDir tmp;
    std::ostringstream log;
    write_file(tmp.path / "empty.ini", "");
    CHECK(simulate((tmp.path / "empty.ini").string(), {(tmp.path / "out").string(), false}, log) == exit_validation);
    CHECK_FALSE(fs::exists(tmp.path / "out"));
    CHECK(log.str().find("[missing_key]") != std::string::npos);

    CHECK(simulate((tmp.path / "absent.ini").string(), {}, log) == exit_usage);

    write_file(tmp.path / "ok.ini", small_global());
    CHECK(simulate((tmp.path / "ok.ini").string(), {(tmp.path / "out").string(), true}, log) == exit_ok);
    CHECK(fs::exists(tmp.path / "out" / "report.json"));
    CHECK_FALSE(fs::exists(tmp.path / "out" / "timeseries.svg"));

    std::ostringstream canon, err;
    CHECK(validate_file((tmp.path / "ok.ini").string(), canon, err) == exit_ok);
    CHECK(canon.str().find("# hash " + config_hash(parse_config(small_global()))) != std::string::npos);
    CHECK(validate_file((tmp.path / "empty.ini").string(), canon, err) == exit_validation);
}

TEST_CASE("sweep: one directory per config stem, collisions rejected") {
    TempDir tmp;
    const std::string out = (tmp.path / "runs").string();
    write_file(tmp.path / "a" / "second.ini",
               "experiment = hopf_decay\n[hopf]\nlambdas = 1, 2\nmesh = 16\n[output]\ndir = " + out + "\n");
    std::ostringstream log;
    write_file(tmp.path / "a" / "first.ini",
               "experiment = axisym_global\n" + coefficients_block +
                   "[grid]\nn = 64\n[time]\nt_end = 0.01\n[output]\nstride = 5\ndir = " + out + "\n");
    CHECK(sweep((tmp.path / "a" / "*.ini").string(), 2, log) == exit_ok);
    CHECK(fs::exists(tmp.path / "runs" / "first" / "report.json"));
    CHECK(fs::exists(tmp.path / "runs" / "second" / "report.json"));

    // Same stem in another folder, same output root.
    write_file(tmp.path / "b" / "first.ini", read_file(tmp.path / "a" / "first.ini"));
    std::ostringstream log2;
    CHECK(sweep((tmp.path / "*" / "first.ini").string(), 2, log2) == exit_validation);
    CHECK(log2.str().find("output_collision") != std::string::npos);

    std::ostringstream log3;
    CHECK(sweep((tmp.path / "nothing*.ini").string(), 1, log3) == exit_usage);
}
