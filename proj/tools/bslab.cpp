#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "bslab/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bslab: spectral, arithmetic and hyperbolic experiments at desk scale"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "path to a key = value config file")->required();

    auto* list = app.add_subcommand("list", "list experiments, parameters and statements");

    std::string manifest_path;
    auto* verify = app.add_subcommand("verify", "re-check the assertions recorded in a manifest");
    verify->add_option("manifest", manifest_path, "path to manifest.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto config = bslab::parse_config_file(config_path);
            auto outcome = bslab::run_experiment(config);
            for (const auto& a : outcome.assertions)
                std::printf("%s  %s  value=%.10g %s %.10g\n", a.passed ? "pass" : "FAIL",
                            a.name.c_str(), a.value, a.comparison.c_str(), a.threshold);
            std::printf("artifacts in %s (%.2fs)\n", config.output_dir.c_str(),
                        outcome.wall_time_s);
            return outcome.all_passed() ? 0 : 1;
        }
        if (list->parsed()) {
            for (const auto& info : bslab::list_experiments()) {
                std::printf("%-18s %s\n", info.name.c_str(), info.statement.c_str());
                std::printf("%-18s parameters: %s\n", "", info.parameters.c_str());
            }
            return 0;
        }
        if (verify->parsed()) {
            std::string report;
            bool ok = bslab::verify_manifest(manifest_path, report);
            std::fputs(report.c_str(), stdout);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
