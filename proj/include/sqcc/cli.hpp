#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sqcc/search_grid.hpp"

namespace sqcc::cli {

enum class Command { sweep, photon_budget, oracle_check, bounds };

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCompute = 3;
inline constexpr int kExitTolerance = 4;

/// Parsed and validated run configuration. Unknown keys anywhere in the
/// config file are rejected.
struct RunConfig {
    Command command = Command::sweep;
    std::string out_path = "out.csv";
    std::string format = "csv";  // csv | json
    int threads = 1;
    long seed = 0;  // reserved; deterministic paths ignore it

    // sweep
    std::vector<std::string> variants;
    std::vector<double> alphas;
    std::vector<double> loss_db;
    double epsilon0 = 0.0;
    double sigma = 0.0;
    double beta = 1.0;
    double theta = 0.0;
    SearchGrid grid;

    // photon-budget
    double pb_loss_db = 0.0;
    std::vector<double> k0_list;
    std::vector<double> ec0_list;

    // oracle-check
    std::string suite;
    int dim = 20;
    int dim_step = 5;
    double tolerance = 1e-6;
    double tolerance_ac = 1e-8;
    unsigned oracle_seed = 20240901;
    int points = 100;

    // bounds
    double n_mode = 1.0;
};

/// Parses the JSON config text for the given command. Throws ConfigError on
/// schema violations (including unknown keys).
RunConfig parse_config(Command command, const std::string& json_text);

/// Reads and parses a config file. Throws ConfigError on I/O failure.
RunConfig load_config(Command command, const std::string& path);

int cmd_sweep(const RunConfig& cfg, std::ostream& diag);
int cmd_photon_budget(const RunConfig& cfg, std::ostream& diag);
int cmd_oracle_check(const RunConfig& cfg, std::ostream& diag);
int cmd_bounds(const RunConfig& cfg, std::ostream& diag);

/// Dispatches on cfg.command; maps exceptions to exit codes.
int run_command(const RunConfig& cfg, std::ostream& diag);

}  // namespace sqcc::cli
