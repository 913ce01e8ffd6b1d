#include "sqcc/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sqcc/baseline.hpp"
#include "sqcc/errors.hpp"
#include "sqcc/gaussian.hpp"
#include "sqcc/optimize.hpp"
#include "sqcc/oracle_suites.hpp"

namespace sqcc::cli {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

double get_num(const json& obj, const std::string& key, double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError("missing required key '" + key + "'");
        return fallback;
    }
    if (!obj[key].is_number()) throw ConfigError("key '" + key + "' must be a number");
    return obj[key].get<double>();
}

std::vector<double> get_grid(const json& obj, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError("missing required key '" + key + "'");
    const json& spec = obj[key];
    std::vector<double> values;
    if (spec.is_array()) {
        for (const auto& v : spec) {
            if (!v.is_number()) throw ConfigError("key '" + key + "': non-numeric entry");
            values.push_back(v.get<double>());
        }
    } else if (spec.is_object()) {
        require_keys(spec, {"start", "stop", "step"}, key);
        const double start = get_num(spec, "start", 0.0, true);
        const double stop = get_num(spec, "stop", 0.0, true);
        const double step = get_num(spec, "step", 0.0, true);
        if (!(step > 0.0) || stop < start) throw ConfigError(key + ": bad range");
        const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long i = 0; i < n; ++i) values.push_back(start + i * step);
    } else {
        throw ConfigError(key + ": expected array or range object");
    }
    if (values.empty()) throw ConfigError(key + ": empty grid");
    return values;
}

SearchGrid parse_grid(const json& obj) {
    SearchGrid grid;
    if (!obj.contains("grid")) return grid;
    const json& g = obj["grid"];
    require_keys(g,
                 {"v_min", "v_max", "n_v", "g_max", "n_g", "t_min", "t_eps", "n_t", "alpha_min",
                  "alpha_max", "n_alpha", "refine_iters", "shrink"},
                 "grid");
    grid.v_min = get_num(g, "v_min", grid.v_min);
    grid.v_max = get_num(g, "v_max", grid.v_max);
    grid.n_v = static_cast<int>(get_num(g, "n_v", grid.n_v));
    grid.g_max = get_num(g, "g_max", grid.g_max);
    grid.n_g = static_cast<int>(get_num(g, "n_g", grid.n_g));
    grid.t_min = get_num(g, "t_min", grid.t_min);
    grid.t_eps = get_num(g, "t_eps", grid.t_eps);
    grid.n_t = static_cast<int>(get_num(g, "n_t", grid.n_t));
    grid.alpha_min = get_num(g, "alpha_min", grid.alpha_min);
    grid.alpha_max = get_num(g, "alpha_max", grid.alpha_max);
    grid.n_alpha = static_cast<int>(get_num(g, "n_alpha", grid.n_alpha));
    grid.refine_iters = static_cast<int>(get_num(g, "refine_iters", grid.refine_iters));
    grid.shrink = get_num(g, "shrink", grid.shrink);
    grid.validate();
    return grid;
}

void parse_common(const json& obj, RunConfig& cfg) {
    if (obj.contains("out")) {
        if (!obj["out"].is_string()) throw ConfigError("key 'out' must be a string");
        cfg.out_path = obj["out"].get<std::string>();
    }
    if (obj.contains("format")) {
        if (!obj["format"].is_string()) throw ConfigError("key 'format' must be a string");
        cfg.format = obj["format"].get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("format must be 'csv' or 'json'");
    }
    if (obj.contains("threads")) cfg.threads = static_cast<int>(get_num(obj, "threads", 1));
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    if (obj.contains("seed")) cfg.seed = static_cast<long>(get_num(obj, "seed", 0));
}

}  // namespace

RunConfig parse_config(Command command, const std::string& json_text) {
    json obj;
    try {
        obj = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config parse error: ") + err.what());
    }

    RunConfig cfg;
    cfg.command = command;
    static const std::set<std::string> common{"out", "format", "threads", "seed"};

    switch (command) {
        case Command::sweep: {
            std::set<std::string> keys = common;
            keys.insert({"variants", "alphas", "loss_db", "epsilon0", "sigma", "beta", "theta",
                         "grid"});
            require_keys(obj, keys, "sweep config");
            if (!obj.contains("variants") || !obj["variants"].is_array() ||
                obj["variants"].empty())
                throw ConfigError("sweep config: 'variants' must be a non-empty array");
            for (const auto& v : obj["variants"]) {
                if (!v.is_string()) throw ConfigError("variants: expected strings");
                variant_from_string(v.get<std::string>());  // validates
                cfg.variants.push_back(v.get<std::string>());
            }
            if (obj.contains("alphas")) {
                for (const auto& a : obj["alphas"]) cfg.alphas.push_back(a.get<double>());
            } else {
                cfg.alphas = {0.0};
            }
            cfg.loss_db = get_grid(obj, "loss_db");
            cfg.epsilon0 = get_num(obj, "epsilon0", 0.0);
            cfg.sigma = get_num(obj, "sigma", 0.0);
            cfg.beta = get_num(obj, "beta", 1.0);
            cfg.theta = get_num(obj, "theta", 0.0);
            cfg.grid = parse_grid(obj);
            break;
        }
        case Command::photon_budget: {
            std::set<std::string> keys = common;
            keys.insert({"loss_db", "epsilon0", "sigma", "beta", "theta", "k0", "ec0", "grid"});
            require_keys(obj, keys, "photon-budget config");
            cfg.pb_loss_db = get_num(obj, "loss_db", 0.0, true);
            cfg.epsilon0 = get_num(obj, "epsilon0", 0.0);
            cfg.sigma = get_num(obj, "sigma", 0.0);
            cfg.beta = get_num(obj, "beta", 1.0);
            cfg.theta = get_num(obj, "theta", 0.0);
            cfg.k0_list = get_grid(obj, "k0");
            cfg.ec0_list = get_grid(obj, "ec0");
            cfg.grid = parse_grid(obj);
            break;
        }
        case Command::oracle_check: {
            std::set<std::string> keys = common;
            keys.insert({"suite", "dim", "dim_step", "tolerance", "tolerance_ac", "oracle_seed",
                         "points"});
            require_keys(obj, keys, "oracle-check config");
            if (!obj.contains("suite") || !obj["suite"].is_string())
                throw ConfigError("oracle-check config: missing 'suite'");
            cfg.suite = obj["suite"].get<std::string>();
            if (cfg.suite != "scissor" && cfg.suite != "ideal-nla" &&
                cfg.suite != "gaussian-core")
                throw ConfigError("oracle-check config: unknown suite '" + cfg.suite + "'");
            cfg.dim = static_cast<int>(get_num(obj, "dim", 20));
            cfg.dim_step = static_cast<int>(get_num(obj, "dim_step", 5));
            cfg.tolerance = get_num(obj, "tolerance",
                                    cfg.suite == "gaussian-core" ? 1e-10 : 1e-6);
            cfg.tolerance_ac = get_num(obj, "tolerance_ac", 1e-8);
            cfg.oracle_seed = static_cast<unsigned>(get_num(obj, "oracle_seed", 20240901));
            cfg.points = static_cast<int>(get_num(obj, "points", 100));
            break;
        }
        case Command::bounds: {
            std::set<std::string> keys = common;
            keys.insert({"loss_db", "n_mode"});
            require_keys(obj, keys, "bounds config");
            cfg.loss_db = get_grid(obj, "loss_db");
            cfg.n_mode = get_num(obj, "n_mode", 1.0);
            if (cfg.n_mode < 0.0) throw ConfigError("bounds config: n_mode < 0");
            break;
        }
    }
    parse_common(obj, cfg);
    return cfg;
}

RunConfig load_config(Command command, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(command, ss.str());
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

std::string records_csv(const std::vector<SweepRecord>& records) {
    std::string s = "loss_db,alpha,variant,V_opt,g_opt,t_opt,key_rate,ber,g2T,T_eff,plob\n";
    for (const auto& r : records) {
        s += fmt17(r.loss_db) + "," + fmt17(r.alpha) + "," + to_string(r.variant) + "," +
             fmt17(r.v_opt) + "," + fmt17(r.g_opt) + "," + fmt17(r.t_opt) + "," +
             fmt17(r.key_rate) + "," + fmt17(r.ber) + "," + fmt17(r.g2t) + "," +
             fmt17(r.t_eff) + "," + fmt17(r.plob) + "\n";
    }
    return s;
}

std::string records_json(const std::vector<SweepRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) {
        arr.push_back({{"loss_db", r.loss_db},
                       {"alpha", r.alpha},
                       {"variant", to_string(r.variant)},
                       {"V_opt", r.v_opt},
                       {"g_opt", r.g_opt},
                       {"t_opt", r.t_opt},
                       {"key_rate", r.key_rate},
                       {"ber", r.ber},
                       {"g2T", r.g2t},
                       {"T_eff", r.t_eff},
                       {"plob", r.plob},
                       {"failed", r.failed}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream& diag) {
    FixedProtocolParams fixed{cfg.sigma, cfg.beta, cfg.theta};
    std::vector<SweepRecord> records;
    for (const auto& name : cfg.variants) {
        const Variant variant = variant_from_string(name);
        const auto recs = loss_sweep(variant, cfg.alphas, cfg.loss_db, cfg.epsilon0, fixed,
                                     cfg.grid, cfg.threads);
        for (const auto& r : recs) {
            if (r.failed)
                diag << "sweep: point failed (variant=" << name << " alpha=" << r.alpha
                     << " loss_db=" << r.loss_db << ")\n";
            records.push_back(r);
        }
    }
    write_file(cfg.out_path, cfg.format == "json" ? records_json(records)
                                                  : records_csv(records));
    return kExitOk;
}

int cmd_photon_budget(const RunConfig& cfg, std::ostream& diag) {
    const ChannelModel channel = ChannelModel::from_loss_db(cfg.pb_loss_db, cfg.epsilon0);
    FixedProtocolParams fixed{cfg.sigma, cfg.beta, cfg.theta};
    const auto matrix =
        photon_landscape(channel, cfg.k0_list, cfg.ec0_list, fixed, cfg.grid, cfg.threads);

    if (cfg.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < cfg.k0_list.size(); ++i)
            for (std::size_t j = 0; j < cfg.ec0_list.size(); ++j) {
                const auto& r = matrix[i][j];
                arr.push_back({{"k0", cfg.k0_list[i]},
                               {"ec0", cfg.ec0_list[j]},
                               {"nbar_min", r.feasible ? r.min_photons : 0.0},
                               {"alpha_opt", r.arg_alpha},
                               {"V_opt", r.arg_variance},
                               {"feasible", r.feasible},
                               {"regime", r.feasible ? to_string(r.regime) : ""}});
            }
        write_file(cfg.out_path, arr.dump(2) + "\n");
    } else {
        std::string s = "k0,ec0,nbar_min,alpha_opt,V_opt,feasible,regime\n";
        for (std::size_t i = 0; i < cfg.k0_list.size(); ++i)
            for (std::size_t j = 0; j < cfg.ec0_list.size(); ++j) {
                const auto& r = matrix[i][j];
                s += fmt17(cfg.k0_list[i]) + "," + fmt17(cfg.ec0_list[j]) + ",";
                if (r.feasible) {
                    s += fmt17(r.min_photons) + "," + fmt17(r.arg_alpha) + "," +
                         fmt17(r.arg_variance) + ",1," + to_string(r.regime);
                } else {
                    s += "inf,0,0,0,";
                }
                s += "\n";
            }
        write_file(cfg.out_path, s);
    }
    (void)diag;
    return kExitOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& diag) {
    OracleReport report;
    if (cfg.suite == "scissor") {
        report = oracle_check_scissor(cfg.dim, cfg.dim_step, cfg.tolerance, cfg.tolerance_ac,
                                      cfg.threads);
    } else if (cfg.suite == "ideal-nla") {
        report = oracle_check_ideal_nla(cfg.dim, cfg.dim_step, cfg.tolerance, cfg.oracle_seed,
                                        cfg.points, cfg.threads);
    } else {
        report = oracle_check_gaussian_core(cfg.oracle_seed, cfg.points >= 2 ? cfg.points : 1000,
                                            cfg.tolerance, cfg.threads);
    }

    for (const auto& e : report.entries)
        diag << report.suite << ": " << e.quantity << " max_rel_dev=" << fmt17(e.max_rel_dev)
             << " tol=" << fmt17(e.tolerance) << (e.pass ? " ok" : " VIOLATION") << "\n";

    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& e : report.entries)
            arr.push_back({{"suite", report.suite},
                           {"quantity", e.quantity},
                           {"max_rel_dev", e.max_rel_dev},
                           {"tolerance", e.tolerance},
                           {"pass", e.pass}});
        write_file(cfg.out_path, arr.dump(2) + "\n");
    } else {
        std::string s = "suite,quantity,max_rel_dev,tolerance,pass\n";
        for (const auto& e : report.entries)
            s += report.suite + "," + e.quantity + "," + fmt17(e.max_rel_dev) + "," +
                 fmt17(e.tolerance) + "," + (e.pass ? "1" : "0") + "\n";
        write_file(cfg.out_path, s);
    }
    return report.pass ? kExitOk : kExitTolerance;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& diag) {
    struct Row {
        double loss;
        bool ok;
        double plob, tk, tk_inf;
    };
    std::vector<Row> rows;
    for (double loss : cfg.loss_db) {
        Row row{loss, false, 0.0, 0.0, 0.0};
        const double t = std::pow(10.0, -loss / 10.0);
        if (t > 0.0 && t < 1.0) {
            row.ok = true;
            row.plob = plob_bound(t);
            row.tk = takeoka_bound(t, cfg.n_mode);
            row.tk_inf = takeoka_limit(t);
        } else {
            diag << "bounds: loss_db=" << loss << " out of domain, row flagged\n";
        }
        rows.push_back(row);
    }

    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json o = {{"loss_db", r.loss}, {"status", r.ok ? "ok" : "out_of_domain"}};
            if (r.ok) {
                o["plob"] = r.plob;
                o["takeoka"] = r.tk;
                o["takeoka_inf"] = r.tk_inf;
            }
            arr.push_back(o);
        }
        write_file(cfg.out_path, arr.dump(2) + "\n");
    } else {
        std::string s = "loss_db,plob,takeoka,takeoka_inf,status\n";
        for (const auto& r : rows) {
            if (r.ok)
                s += fmt17(r.loss) + "," + fmt17(r.plob) + "," + fmt17(r.tk) + "," +
                     fmt17(r.tk_inf) + ",ok\n";
            else
                s += fmt17(r.loss) + ",,,,out_of_domain\n";
        }
        write_file(cfg.out_path, s);
    }
    return kExitOk;
}

int run_command(const RunConfig& cfg, std::ostream& diag) {
    try {
        switch (cfg.command) {
            case Command::sweep: return cmd_sweep(cfg, diag);
            case Command::photon_budget: return cmd_photon_budget(cfg, diag);
            case Command::oracle_check: return cmd_oracle_check(cfg, diag);
            case Command::bounds: return cmd_bounds(cfg, diag);
        }
    } catch (const ConfigError& err) {
        diag << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const Error& err) {
        diag << "computation failed: " << err.what() << "\n";
        return kExitCompute;
    } catch (const std::exception& err) {
        diag << "computation failed: " << err.what() << "\n";
        return kExitCompute;
    }
    return kExitCompute;
}

}  // namespace sqcc::cli
