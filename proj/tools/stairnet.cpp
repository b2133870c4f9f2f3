#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stairnet/config.hpp"
#include "stairnet/runner.hpp"
#include "stairnet/verify.hpp"

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("STAIRNET_OUT_DIR");
    return env && *env ? env : "out";
}

int do_run(const std::string& config_path, const std::string& preset,
           const std::vector<std::uint64_t>& seeds, const std::string& out, unsigned jobs) {
    stairnet::RunConfig config;
    if (!preset.empty()) {
        config = stairnet::load_preset(preset);
    } else if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config file: " << config_path << "\n";
            return 2;
        }
        config = stairnet::parse_run_config(in);
    } else {
        std::cerr << "run requires --config or --preset\n";
        return 2;
    }
    if (!seeds.empty()) config.seeds = seeds;
    std::string out_dir = !out.empty() ? out : (!config.out_dir.empty() ? config.out_dir : default_out_dir());

    try {
        config.validate();
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    }

    stairnet::RunReport report = stairnet::run_experiment(config, out_dir, jobs);
    for (const auto& o : report.outcomes)
        std::cout << "seed " << o.seed << ": " << (o.completed ? "completed" : "FAILED")
                  << ", final loss " << o.final_loss << (o.error.empty() ? "" : ", " + o.error)
                  << "\n";
    std::cout << "summary: " << report.summary_path << "\n";
    if (!report.all_completed()) {
        std::cerr << "one or more seeds failed; error records in " << report.error_path << "\n";
        return 1;
    }
    return 0;
}

int do_verify(const std::string& selector, bool slow) {
    std::vector<std::string> names;
    if (selector == "all") {
        names = stairnet::verify::suite_names(slow);
    } else {
        auto known = stairnet::verify::suite_names(true);
        bool found = false;
        for (const auto& n : known) found |= n == selector;
        if (!found) {
            std::cerr << "unknown suite: " << selector << "\nknown suites:";
            for (const auto& n : known) std::cerr << ' ' << n;
            std::cerr << "\n";
            return 2;
        }
        names.push_back(selector);
    }
    bool all_passed = true;
    for (const auto& name : names) {
        stairnet::verify::SuiteResult r = stairnet::verify::run_suite(name);
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
        all_passed &= r.passed;
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Layerwise training of sparse quadratic networks on staircase functions, "
                 "plus a ReLU ResNet SGD harness"};
    app.require_subcommand(1);

    std::string config_path, preset, out, suite = "all";
    std::vector<std::uint64_t> seeds;
    unsigned jobs = 1;
    bool slow = false;

    auto* run = app.add_subcommand("run", "run an experiment configuration");
    run->add_option("--config", config_path, "configuration file");
    run->add_option("--preset", preset, "built-in preset name");
    run->add_option("--seed", seeds, "seed list override");
    run->add_option("--out", out, "output directory (default $STAIRNET_OUT_DIR or ./out)");
    run->add_option("--jobs", jobs, "worker pool size for seed sweeps");

    auto* verify = app.add_subcommand("verify", "run property verification suites");
    verify->add_option("suite", suite, "suite name or 'all'");
    verify->add_flag("--slow", slow, "include the long-running suites");

    auto* presets = app.add_subcommand("presets", "list built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(config_path, preset, seeds, out, jobs);
        if (verify->parsed()) return do_verify(suite, slow);
        if (presets->parsed()) {
            for (const auto& [name, text] : stairnet::preset_table()) std::cout << name << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
