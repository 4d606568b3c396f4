#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nematic/config.hpp"

namespace nematic::harness {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,       // bad command line or unreadable / unwritable files
    exit_validation = 2,  // the config cannot be run
    exit_halted = 3,      // the run started but the solver stopped
};

/// Everything a run produces, held in memory until it is written.
struct Artifacts {
    std::vector<std::pair<std::string, std::string>> files;  // name, contents
    Json report;
    int exit_code = exit_ok;
    std::string summary;
};

/// Runs the configured experiment without touching the file system.
Artifacts run_experiment(const ExperimentConfig& cfg);

/// Writes plain file names into one directory and refuses anything else.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path root);

    void write(const std::string& name, const std::string& contents);
    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }

private:
    std::filesystem::path root_;
};

struct RunOptions {
    std::optional<std::string> out_dir;
    bool no_plots = false;
};

/// load, validate, run, write. Errors are reported on `log` and mapped to
/// exit codes; nothing is written when the config does not validate.
int simulate(const std::string& config_path, const RunOptions& opts, std::ostream& log);

/// Parses and validates only; prints the canonical form and hash.
int validate_file(const std::string& config_path, std::ostream& out, std::ostream& log);

/// Runs every config matching `pattern`, `threads` at a time. Each run writes to
/// <output dir>/<config file stem>. Returns the largest exit code.
int sweep(const std::string& pattern, unsigned threads, std::ostream& log);

}  // namespace nematic::harness
