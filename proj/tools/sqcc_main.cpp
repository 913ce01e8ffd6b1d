#include <clocale>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sqcc/cli.hpp"
#include "sqcc/errors.hpp"

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"SQCC CV-QKD rate calculator and figure-data generator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    int threads = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_path, "output file (overrides config)");
        sub->add_option("--format", format, "csv or json (overrides config)");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    };

    CLI::App* sweep = app.add_subcommand("sweep", "optimized key-rate loss sweeps");
    CLI::App* budget = app.add_subcommand("photon-budget", "minimum-photon QoS landscape");
    CLI::App* oracle = app.add_subcommand("oracle-check", "analytic vs number-basis simulator");
    CLI::App* bounds = app.add_subcommand("bounds", "channel-capacity comparison curves");
    for (CLI::App* sub : {sweep, budget, oracle, bounds}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    sqcc::cli::Command command = sqcc::cli::Command::sweep;
    if (budget->parsed()) command = sqcc::cli::Command::photon_budget;
    if (oracle->parsed()) command = sqcc::cli::Command::oracle_check;
    if (bounds->parsed()) command = sqcc::cli::Command::bounds;

    sqcc::cli::RunConfig cfg;
    try {
        cfg = sqcc::cli::load_config(command, config_path);
    } catch (const sqcc::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return sqcc::cli::kExitConfig;
    }
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) {
        if (format != "csv" && format != "json") {
            std::cerr << "config error: format must be csv or json\n";
            return sqcc::cli::kExitConfig;
        }
        cfg.format = format;
    }
    if (threads > 1) cfg.threads = threads;

    return sqcc::cli::run_command(cfg, std::cerr);
}
