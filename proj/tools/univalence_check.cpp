#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "univalence/run.hpp"

using namespace univalence;

int main(int argc, char** argv) {
    CLI::App app{"Check sufficient univalence and quasiconformal-extension criteria on the unit disk"};
    app.option_defaults()->always_capture_default(false);

    std::string config_path;
    app.add_option("--config", config_path, "flat key = value file; flags override it");

    static const std::map<std::string, std::string> help{
        {"criterion", "criterion preset id"},
        {"f", "catalog function, name or name:param"},
        {"f-coeffs", "Taylor coefficients of f, ';'-separated complex values"},
        {"g", "catalog function for g, or f_prime / f_over_z"},
        {"g-coeffs", "Taylor coefficients of g"},
        {"alpha", "complex, 're' or 're,im'"},
        {"beta", "complex"},
        {"A", "complex"},
        {"B", "complex"},
        {"k", "quasiconformal bound in [0, 1)"},
        {"nr", "radial grid points"},
        {"ntheta", "angular grid points"},
        {"rmax", "outer grid radius in (0, 1)"},
        {"tol", "tolerance of the pass/fail decision"},
        {"refine", "local refinement rounds around the worst point"},
        {"out-dir", "output directory"},
        {"emit", "comma list: report,heatmap1,heatmap2,domain,beltrami,diagnostics"},
        {"threads", "worker threads, 0 = hardware concurrency"},
        {"fault-rhs-scale", ""},
    };
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const auto& key : config_keys()) {
        auto* opt = app.add_option("--" + key, values[key], help.at(key));
        if (key == "fault-rhs-scale") opt->group("");  // fault injection for self-tests
        options[key] = opt;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    RunConfig config = default_config();
    try {
        if (!config_path.empty()) apply_config_file(config, config_path);
        for (const auto& key : config_keys())
            if (options[key]->count() > 0) apply_setting(config, key, values[key], "--" + key);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const RunOutcome outcome = run(config);
    const RunReport& report = outcome.report;
    const int code = exit_code(report.status);
    if (report.status == RunStatus::Inconsistent) {
        std::cerr << "INTERNAL INCONSISTENCY: " << report.message << "\n";
    } else if (code == 2) {
        std::cerr << to_string(report.status) << ": " << report.message << "\n";
    }
    std::cout << "criterion " << config.criterion << ": ";
    if (report.criterion) std::cout << to_string(report.criterion->verdict);
    else std::cout << "not evaluated";
    std::cout << " (exit " << code << ")\n";
    return code;
}
