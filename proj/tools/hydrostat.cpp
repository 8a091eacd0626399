#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "hydrostat/acceptance.hpp"
#include "hydrostat/config.hpp"
#include "hydrostat/io.hpp"
#include "hydrostat/scenarios.hpp"

using namespace hydrostat;

namespace {

int load(const std::string& path, RunConfig& cfg) {
    try {
        cfg = parse_config_file(path);
        return exit_ok;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
}

int cmd_run(const std::string& path) {
    RunConfig cfg;
    if (int rc = load(path, cfg)) return rc;
    return run_scenario(cfg, std::cout);
}

int cmd_verify(const std::string& path, const std::vector<int>& only) {
    RunConfig cfg;
    if (int rc = load(path, cfg)) return rc;
    AcceptanceOptions opt;
    opt.seed = cfg.seed;
    opt.threads = worker_threads();
    opt.only = only;
    const auto results = run_acceptance(opt, std::cout);
    bool ok = !results.empty();
    for (const auto& r : results) ok = ok && r.pass;
    try {
        std::filesystem::create_directories(cfg.output_dir);
        std::ofstream f(cfg.output_dir + "/acceptance.txt");
        for (const auto& r : results) f << format_result(r) << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return ok ? exit_ok : exit_acceptance;
}

int cmd_diff(const std::string& a, const std::string& b) {
    try {
        const SnapshotDiff d = diff_snapshots(read_snapshot(a), read_snapshot(b));
        std::cout << std::setprecision(17) << "l2 = " << d.l2 << "\nlinf = " << d.linf << "\n";
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hydrostatic primitive-equation simulator"};
    app.require_subcommand(1);

    std::string config;
    auto* run = app.add_subcommand("run", "Run the scenario named in a config file");
    run->add_option("config", config, "Configuration file")->required();

    std::vector<int> only;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("config", config, "Configuration file (seed, output.dir)")->required();
    verify->add_option("--only", only, "Criteria to run (default: all)")->delimiter(',')->check(CLI::Range(1, 10));

    std::string snap_a, snap_b;
    auto* diff = app.add_subcommand("diff", "Print L2 and Linf differences of two snapshots");
    diff->add_option("a", snap_a, "First snapshot")->required();
    diff->add_option("b", snap_b, "Second snapshot")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    if (*run) return cmd_run(config);
    if (*verify) return cmd_verify(config, only);
    return cmd_diff(snap_a, snap_b);
}
