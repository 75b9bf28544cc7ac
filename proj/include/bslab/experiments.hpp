#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bslab {

// Flat experiment configuration: every run is fully determined by
// (name, parameters, seed). Unknown parameter names are rejected.
struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> parameters;
    uint64_t seed = 0;
    std::string output_dir = "out";
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

struct Assertion {
    std::string name;
    double value = 0;
    double threshold = 0;
    std::string comparison;  // "<=", ">=", "==", "<"
    bool passed = false;
    std::string detail;
};

struct RunOutcome {
    std::vector<Assertion> assertions;
    std::map<std::string, double> results;
    std::vector<std::string> csv_files;
    double wall_time_s = 0;
    bool all_passed() const;
};

// Runs the experiment, writes CSV artifacts and manifest.json into the
// output directory, returns the outcome. Deterministic given (config, seed).
RunOutcome run_experiment(const ExperimentConfig& config);

struct ExperimentInfo {
    std::string name;
    std::string parameters;  // "key=default, ..."
    std::string statement;   // the quantitative statement the run exercises
};

// Stable-ordered table of the available experiments.
std::vector<ExperimentInfo> list_experiments();

// Re-evaluates the assertions recorded in a manifest; true iff all pass.
bool verify_manifest(const std::string& manifest_path, std::string& report);

extern const char* kVersion;

} // namespace bslab
