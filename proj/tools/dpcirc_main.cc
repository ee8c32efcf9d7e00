// Copyright 2026 The dpcirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything runs through the C interface in dpcirc.h.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpcirc.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Failure {
    dpcirc_status status;
    std::string message;
};

void check(dpcirc_status s) {
    if (s != DPCIRC_OK) {
        throw Failure{s, dpcirc_last_error()};
    }
}

void usage(const std::string &message) {
    throw Failure{DPCIRC_USAGE_ERROR, message};
}

template <class T>
std::vector<T> parse_list(const std::string &text, const char *flag) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::istringstream in(item);
        T v{};
        if (!(in >> v) || !in.eof()) {
            usage(std::string("bad value '") + item + "' in " + flag);
        }
        out.push_back(v);
    }
    if (out.empty()) {
        usage(std::string(flag) + " needs at least one value");
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, size_t count) {
    std::vector<double> out;
    for (size_t i = 0; i < count; i++) {
        out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return out;
}

struct Table {
    dpcirc_table *ptr = nullptr;
    ~Table() {
        dpcirc_table_free(ptr);
    }
};

/// Files written by this run; removed again unless the run succeeds.
class Outputs {
   public:
    void write(const Table &t, const std::string &path) {
        paths_.push_back(path);
        check(dpcirc_table_write_csv(t.ptr, path.c_str()));
    }
    void write_json(const json &j, const std::string &path) {
        paths_.push_back(path);
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << j.dump(2) << '\n';
        f.close();
        if (!f) {
            throw Failure{DPCIRC_RUNTIME_ERROR, "failed writing '" + path + "'"};
        }
    }
    void track(const std::string &path) {
        paths_.push_back(path);
    }
    const std::vector<std::string> &paths() const {
        return paths_;
    }
    void commit() {
        committed_ = true;
    }
    ~Outputs() {
        if (!committed_) {
            for (const auto &p : paths_) {
                std::remove(p.c_str());
            }
        }
    }

   private:
    std::vector<std::string> paths_;
    bool committed_ = false;
};

// JSON has no NaN; censored values become null.
json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string default_manifest_path(const std::string &out) {
    std::filesystem::path p(out);
    p.replace_extension(".manifest.json");
    return p.string();
}

/// Value of an option for the manifest: a number when it parses as one.
json option_value(const CLI::Option *opt) {
    std::string text = opt->count() > 0 ? opt->as<std::string>() : opt->get_default_str();
    if (opt->get_type_size() == 0) {
        return opt->count() > 0;
    }
    if (text.empty()) {
        return nullptr;
    }
    if (text.find(',') != std::string::npos) {
        json arr = json::array();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                size_t used = 0;
                double v = std::stod(item, &used);
                arr.push_back(used == item.size() ? json(v) : json(item));
            } catch (const std::exception &) {
                arr.push_back(item);
            }
        }
        return arr;
    }
    try {
        size_t used = 0;
        if (text.find_first_of(".eE") == std::string::npos && text[0] != '-') {
            unsigned long long v = std::stoull(text, &used);
            if (used == text.size()) {
                return v;
            }
        }
        double v = std::stod(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    return text;
}

json config_snapshot(const CLI::App *sub) {
    json c = json::object();
    for (const CLI::Option *opt : sub->get_options()) {
        std::string name = opt->get_name(false, true);
        if (name.rfind("--", 0) != 0) {
            continue;
        }
        name = name.substr(2);
        if (name == "help" || name == "config" || name == "manifest") {
            continue;
        }
        c[name] = option_value(opt);
    }
    return c;
}

/// Reads flat `key = value` lines (# comments) into flag tokens.
std::vector<std::string> config_tokens(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        usage("cannot read config file '" + path + "'");
    }
    std::vector<std::string> tokens;
    std::string line;
    size_t lineno = 0;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(f, line)) {
        lineno++;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            usage(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        for (char &ch : key) {
            if (ch == '_') {
                ch = '-';
            }
        }
        if (value == "true") {
            tokens.push_back("--" + key);
        } else if (value != "false") {
            tokens.push_back("--" + key);
            tokens.push_back(value);
        }
    }
    return tokens;
}

/// Splices config-file tokens in front of the subcommand's own flags so that
/// flags given on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args, const std::vector<std::string> &subcommands) {
    std::optional<std::string> path;
    for (size_t i = 1; i < args.size(); i++) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (!path) {
        return args;
    }
    auto tokens = config_tokens(*path);
    for (size_t i = 1; i < args.size(); i++) {
        if (std::find(subcommands.begin(), subcommands.end(), args[i]) != subcommands.end()) {
            args.insert(args.begin() + static_cast<long>(i) + 1, tokens.begin(), tokens.end());
            return args;
        }
    }
    usage("--config needs a subcommand");
    return args;
}

struct Common {
    std::optional<uint64_t> seed;
    std::string out;
    std::string manifest;
    int threads = 0;
};

void add_common(CLI::App *sub, Common &c, bool out_required) {
    sub->add_option("--seed", c.seed, "Master seed (drawn from system entropy when absent)");
    auto *o = sub->add_option("--out", c.out, "Output CSV path");
    if (out_required) {
        o->required();
    }
    sub->add_option("--manifest", c.manifest, "Manifest path (default: <out> with .manifest.json)");
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

uint64_t resolve_seed(Common &c) {
    if (!c.seed) {
        std::random_device rd;
        c.seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    }
    return *c.seed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Random semi-classical circuits with erasure errors"};
    app.set_version_flag("--version", std::string(dpcirc_version()));
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Common common;

    // decay
    dpcirc_circuit_config decay{};
    decay.depth = 100;
    size_t decay_realizations = 100;
    auto *cmd_decay = app.add_subcommand("decay", "Entropy S(t) from a maximally mixed start");
    cmd_decay->add_option("--n", decay.n, "System size (even)")->required();
    cmd_decay->add_option("--p", decay.p, "Erasure probability");
    cmd_decay->add_option("--q", decay.q, "Hadamard probability");
    cmd_decay->add_option("--h", decay.h, "Junk-noise probability");
    cmd_decay->add_option("--depth", decay.depth, "Layers");
    cmd_decay->add_option("--realizations", decay_realizations, "Circuit realizations");
    add_common(cmd_decay, common, true);

    // sweep
    dpcirc_sweep_config sweep;
    dpcirc_sweep_config_default(&sweep);
    std::string sweep_ns, sweep_ps;
    size_t crossing_bootstrap = 200;
    auto *cmd_sweep = app.add_subcommand("sweep", "Decay time tau over an (N, p) grid");
    cmd_sweep->add_option("--n-list", sweep_ns, "Comma-separated system sizes")->required();
    cmd_sweep->add_option("--p-list", sweep_ps, "Comma-separated erasure probabilities")->required();
    cmd_sweep->add_option("--q", sweep.q, "Hadamard probability");
    cmd_sweep->add_option("--h", sweep.h, "Junk-noise probability");
    cmd_sweep->add_option("--realizations", sweep.realizations, "Realizations per grid point");
    cmd_sweep->add_option("--bootstrap", sweep.bootstrap, "Bootstrap resamples for tau errors");
    cmd_sweep->add_option("--depth-coeff", sweep.depth_coeff, "depth = coeff * N^exponent");
    cmd_sweep->add_option("--depth-exponent", sweep.depth_exponent, "depth = coeff * N^exponent");
    cmd_sweep->add_option("--t0-min", sweep.t0_min, "t0 = max(t0-min, t0-coeff * N^t0-exponent)");
    cmd_sweep->add_option("--t0-coeff", sweep.t0_coeff);
    cmd_sweep->add_option("--t0-exponent", sweep.t0_exponent);
    cmd_sweep->add_option("--fraction", sweep.fraction, "Decay fraction defining tau");
    cmd_sweep->add_option("--crossing-bootstrap", crossing_bootstrap, "Resamples for the crossing fit covariance");
    add_common(cmd_sweep, common, true);

    // dp
    size_t dp_n = 64, dp_depth = 1000, dp_trajectories = 1000;
    double dp_p = 0.09;
    std::string dp_start = "random_half";
    auto *cmd_dp = app.add_subcommand("dp", "Directed-percolation lattice observables");
    cmd_dp->add_option("--n", dp_n, "Lattice sites (even)");
    cmd_dp->add_option("--p", dp_p, "Erasure probability");
    cmd_dp->add_option("--depth", dp_depth, "Time steps");
    cmd_dp->add_option("--trajectories", dp_trajectories, "Independent trajectories");
    cmd_dp->add_option("--start", dp_start, "random_half or full")->check(CLI::IsMember({"random_half", "full"}));
    add_common(cmd_dp, common, true);

    // mi
    size_t mi_n = 40, mi_realizations = 100;
    std::string mi_ps = "0.081";
    double mi_q = 0, mi_h = 0, mi_z = 1.51;
    auto *cmd_mi = app.add_subcommand("mi", "Antipodal mutual information at t = N^z");
    cmd_mi->add_option("--n", mi_n, "System size (multiple of 4)");
    cmd_mi->add_option("--p-list", mi_ps, "Comma-separated erasure probabilities");
    cmd_mi->add_option("--q", mi_q, "Hadamard probability");
    cmd_mi->add_option("--h", mi_h, "Junk-noise probability");
    cmd_mi->add_option("--z", mi_z, "Evaluation time exponent");
    cmd_mi->add_option("--realizations", mi_realizations);
    add_common(cmd_mi, common, true);

    // perturb
    dpcirc_circuit_config perturb{};
    perturb.n = 64;
    perturb.p = 0.081;
    perturb.depth = 2000;
    std::string perturb_var = "q", perturb_values = "0.01,0.02,0.04", saturation_out;
    size_t perturb_realizations = 100;
    auto *cmd_perturb = app.add_subcommand("perturb", "S(t) family at fixed p while sweeping q or h");
    cmd_perturb->add_option("--n", perturb.n);
    cmd_perturb->add_option("--p", perturb.p);
    cmd_perturb->add_option("--depth", perturb.depth);
    cmd_perturb->add_option("--variable", perturb_var, "q or h")->check(CLI::IsMember({"q", "h"}));
    cmd_perturb->add_option("--values", perturb_values, "Comma-separated values of the swept variable");
    cmd_perturb->add_option("--realizations", perturb_realizations);
    cmd_perturb->add_option("--saturation-out", saturation_out, "Optional CSV of saturation values");
    add_common(cmd_perturb, common, true);

    // phase-diagram
    dpcirc_phase_config phase{};
    phase.n = 24;
    phase.realizations = 50;
    phase.threshold = 1;
    size_t p_grid = 12, q_grid = 8;
    double p_min = 0, p_max = 0.2, q_min = 0, q_max = 0.1;
    std::string phase_ps, phase_qs, phase_init = "referenced_classical";
    auto *cmd_phase = app.add_subcommand("phase-diagram", "Input:output MI decay timescale over (p, q)");
    cmd_phase->add_option("--n", phase.n);
    cmd_phase->add_option("--p-grid", p_grid, "Number of p values in [p-min, p-max]");
    cmd_phase->add_option("--q-grid", q_grid, "Number of q values in [q-min, q-max]");
    cmd_phase->add_option("--p-min", p_min);
    cmd_phase->add_option("--p-max", p_max);
    cmd_phase->add_option("--q-min", q_min);
    cmd_phase->add_option("--q-max", q_max);
    cmd_phase->add_option("--p-list", phase_ps, "Explicit p values (overrides the grid)");
    cmd_phase->add_option("--q-list", phase_qs, "Explicit q values (overrides the grid)");
    cmd_phase->add_option("--depth", phase.depth, "Layers (0 = 4 N^1.6)");
    cmd_phase->add_option("--realizations", phase.realizations);
    cmd_phase->add_option("--threshold", phase.threshold, "MI threshold in bits");
    cmd_phase->add_option("--initial-state", phase_init)
        ->check(CLI::IsMember({"referenced_classical", "referenced_bell"}));
    add_common(cmd_phase, common, true);

    // collapse
    std::string collapse_in, ansatz = "tau", bounds;
    size_t restarts = 12;
    auto *cmd_collapse = app.add_subcommand("collapse", "Fit scaling exponents by data collapse");
    cmd_collapse->add_option("--in", collapse_in, "Sweep CSV (tau) or decay CSV (crossover, generic)")->required();
    cmd_collapse->add_option("--ansatz", ansatz)->check(CLI::IsMember({"tau", "crossover", "generic"}));
    cmd_collapse->add_option("--bounds", bounds, "lo:hi per exponent, comma-separated");
    cmd_collapse->add_option("--restarts", restarts);
    add_common(cmd_collapse, common, true);

    // verify
    dpcirc_verify_options vopt;
    dpcirc_verify_options_default(&vopt);
    auto *cmd_verify = app.add_subcommand("verify", "Run the identity and oracle-equivalence suite");
    cmd_verify->add_option("--qbar-samples", vopt.qbar_samples);
    cmd_verify->add_option("--oracle-schedules", vopt.oracle_schedules);
    cmd_verify->add_option("--s2-realizations", vopt.s2_realizations);
    add_common(cmd_verify, common, false);

    std::vector<std::string> names;
    for (const auto *s : app.get_subcommands({})) {
        names.push_back(s->get_name());
    }

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(args, names);
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        try {
            app.parse(reversed);
        } catch (const CLI::Success &e) {
            return app.exit(e);
        } catch (const CLI::ParseError &e) {
            app.exit(e);
            return DPCIRC_USAGE_ERROR;
        }

        CLI::App *sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        auto start = std::chrono::steady_clock::now();
        Outputs outputs;
        json results = json::object();
        int exit_code = DPCIRC_OK;
        uint64_t seed = 0;
        if (name == "verify" && !common.seed) {
            // The verification suite is a fixed, reproducible check by default.
            common.seed = vopt.seed;
        }
        seed = resolve_seed(common);

        if (name == "decay") {
            Table t;
            check(dpcirc_run_decay(&decay, seed, decay_realizations, common.threads, &t.ptr));
            outputs.write(t, common.out);
        } else if (name == "sweep") {
            auto ns = parse_list<size_t>(sweep_ns, "--n-list");
            auto ps = parse_list<double>(sweep_ps, "--p-list");
            sweep.ns = ns.data();
            sweep.n_count = ns.size();
            sweep.ps = ps.data();
            sweep.p_count = ps.size();
            Table t, later;
            check(dpcirc_run_sweep(&sweep, seed, common.threads, &t.ptr, &later.ptr));
            outputs.write(t, common.out);
            json sensitivity = json::array();
            for (size_t r = 0; r < dpcirc_table_rows(later.ptr); r++) {
                sensitivity.push_back({{"n", dpcirc_table_value(later.ptr, r, 0)},
                                       {"p", dpcirc_table_value(later.ptr, r, 1)},
                                       {"tau_t0", finite_or_null(dpcirc_table_value(t.ptr, r, 2))},
                                       {"tau_2t0", finite_or_null(dpcirc_table_value(later.ptr, r, 2))}});
            }
            results["t0_sensitivity"] = sensitivity;
            if (ns.size() >= 3) {
                for (auto [key, table] : {std::pair{"crossing", t.ptr}, std::pair{"crossing_2t0", later.ptr}}) {
                    dpcirc_crossing fit{};
                    if (dpcirc_fit_crossing(table, crossing_bootstrap, seed, &fit) == DPCIRC_OK) {
                        results[key] = {{"p_c", fit.p_c},       {"z", fit.z},           {"spread", fit.spread},
                                        {"cov_pp", fit.cov_pp}, {"cov_pz", fit.cov_pz}, {"cov_zz", fit.cov_zz}};
                    } else {
                        results[std::string(key) + "_error"] = dpcirc_last_error();
                    }
                }
            }
        } else if (name == "dp") {
            Table t;
            check(dpcirc_run_dp(dp_n, dp_p, dp_depth, dp_trajectories, dp_start.c_str(), seed, common.threads, &t.ptr));
            outputs.write(t, common.out);
        } else if (name == "mi") {
            auto ps = parse_list<double>(mi_ps, "--p-list");
            Table t;
            check(dpcirc_run_mi(mi_n, ps.data(), ps.size(), mi_q, mi_h, mi_realizations, mi_z, seed, common.threads,
                                &t.ptr));
            outputs.write(t, common.out);
        } else if (name == "perturb") {
            auto values = parse_list<double>(perturb_values, "--values");
            Table curves, sat;
            check(dpcirc_run_perturb(&perturb, perturb_var[0], values.data(), values.size(), seed,
                                     perturb_realizations, common.threads, &curves.ptr, &sat.ptr));
            outputs.write(curves, common.out);
            if (!saturation_out.empty()) {
                outputs.write(sat, saturation_out);
            }
            json s = json::array();
            for (size_t i = 0; i < dpcirc_table_rows(sat.ptr); i++) {
                s.push_back({{"value", dpcirc_table_value(sat.ptr, i, 0)},
                             {"saturation", dpcirc_table_value(sat.ptr, i, 1)},
                             {"saturation_stderr", dpcirc_table_value(sat.ptr, i, 2)}});
            }
            results["saturation"] = s;
        } else if (name == "phase-diagram") {
            auto ps = phase_ps.empty() ? linspace(p_min, p_max, p_grid) : parse_list<double>(phase_ps, "--p-list");
            auto qs = phase_qs.empty() ? linspace(q_min, q_max, q_grid) : parse_list<double>(phase_qs, "--q-list");
            if (ps.empty() || qs.empty()) {
                usage("the p and q grids must be nonempty");
            }
            phase.ps = ps.data();
            phase.p_count = ps.size();
            phase.qs = qs.data();
            phase.q_count = qs.size();
            phase.initial_state = phase_init.c_str();
            Table t;
            check(dpcirc_run_phase_diagram(&phase, seed, common.threads, &t.ptr));
            outputs.write(t, common.out);
        } else if (name == "collapse") {
            std::vector<double> lower, upper;
            if (!bounds.empty()) {
                for (const auto &item : parse_list<std::string>(bounds, "--bounds")) {
                    size_t colon = item.find(':');
                    if (colon == std::string::npos) {
                        usage("--bounds entries look like lo:hi, got '" + item + "'");
                    }
                    try {
                        lower.push_back(std::stod(item.substr(0, colon)));
                        upper.push_back(std::stod(item.substr(colon + 1)));
                    } catch (const std::exception &) {
                        usage("bad --bounds entry '" + item + "'");
                    }
                }
            }
            Table in, rescaled;
            check(dpcirc_table_read_csv(collapse_in.c_str(), &in.ptr));
            dpcirc_collapse_result fit{};
            check(dpcirc_fit_collapse(in.ptr, ansatz.c_str(), lower.data(), upper.data(), lower.size(), restarts, seed,
                                      &fit, &rescaled.ptr));
            outputs.write(rescaled, common.out);
            json e = json::object();
            for (size_t i = 0; i < fit.exponent_count; i++) {
                e[fit.names[i]] = fit.exponents[i];
            }
            results["exponents"] = e;
            results["objective"] = fit.objective;
            results["converged"] = fit.converged != 0;
            results["degenerate"] = fit.degenerate != 0;
            std::cout << "collapse (" << ansatz << "):";
            for (size_t i = 0; i < fit.exponent_count; i++) {
                std::cout << " " << fit.names[i] << "=" << fit.exponents[i];
            }
            std::cout << " objective=" << fit.objective << (fit.converged ? "" : " (not converged)") << "\n";
        } else if (name == "verify") {
            vopt.seed = seed;
            dpcirc_report *raw = nullptr;
            dpcirc_status s = dpcirc_verify(&vopt, common.threads, &raw);
            if (raw == nullptr) {
                check(s);
            }
            std::unique_ptr<dpcirc_report, void (*)(dpcirc_report *)> report(raw, dpcirc_report_free);
            json checks = json::array();
            for (size_t i = 0; i < dpcirc_report_count(raw); i++) {
                bool ok = dpcirc_report_passed(raw, i);
                std::printf("%s %-24s %7.2fs  %s\n", ok ? "PASS" : "FAIL", dpcirc_report_name(raw, i),
                            dpcirc_report_seconds(raw, i), dpcirc_report_detail(raw, i));
                checks.push_back({{"name", dpcirc_report_name(raw, i)},
                                  {"passed", ok},
                                  {"seconds", dpcirc_report_seconds(raw, i)},
                                  {"detail", dpcirc_report_detail(raw, i)}});
            }
            results["checks"] = checks;
            exit_code = s;
            if (!common.out.empty()) {
                outputs.track(common.out);
                std::ofstream f(common.out, std::ios::binary | std::ios::trunc);
                f << "check,passed,seconds,detail\n";
                for (const auto &c : checks) {
                    std::string detail = c["detail"];
                    std::replace(detail.begin(), detail.end(), ',', ';');
                    f << c["name"].get<std::string>() << "," << (c["passed"].get<bool>() ? 1 : 0) << ","
                      << c["seconds"].get<double>() << "," << detail << "\n";
                }
            }
        }

        std::string manifest_path = common.manifest;
        if (manifest_path.empty() && !common.out.empty()) {
            manifest_path = default_manifest_path(common.out);
        }
        if (!manifest_path.empty()) {
            json m;
            m["config"] = config_snapshot(sub);
            m["config"]["seed"] = seed;
            m["seed"] = seed;
            m["subcommand"] = name;
            m["version"] = dpcirc_version();
            m["duration_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            json paths = json::array();
            for (const auto &p : outputs.paths()) {
                paths.push_back(p);
            }
            m["outputs"] = paths;
            m["results"] = results;
            outputs.write_json(m, manifest_path);
        }
        outputs.commit();
        return exit_code;
    } catch (const Failure &f) {
        std::cerr << "error: " << f.message << "\n";
        return f.status;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return DPCIRC_RUNTIME_ERROR;
    }
}
