// Copyright 2026 The wvasat Authors
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


// wvasat: Fisher information of a saturating, digitizing, noisy pixel camera
// for conventional and weak-value-amplified beam-shift measurements.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wvasat/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kNumericalError = 3 };

struct CommonArgs {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    bool json = false;
};

wvasat::ExperimentConfig load(const CommonArgs &args) {
    if (args.config.empty() == args.preset.empty()) {
        throw wvasat::ConfigError("give exactly one of --config or --preset");
    }
    auto cfg = args.preset.empty() ? wvasat::load_config(args.config) : wvasat::load_preset(args.preset);
    if (args.seed) {
        cfg.seed = *args.seed;
    }
    return cfg;
}

void emit(const wvasat::Table &table, const CommonArgs &args, const wvasat::ExperimentConfig &cfg) {
    std::string path = args.out;
    if (path.empty()) {
        const auto &configured = args.json ? cfg.output.json : cfg.output.csv;
        path = configured.value_or("-");
    }
    auto write = [&](std::ostream &os) {
        if (args.json) {
            wvasat::write_json_records(table, os);
        } else {
            wvasat::write_csv(table, os);
        }
    };
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw wvasat::ConfigError("cannot open output file '" + path + "'");
    }
    write(file);
    if (!file) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fisher information of a realistic camera: conventional vs weak-value-amplified measurement"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    CommonArgs args;
    std::string dump_preset;
    bool list_presets = false;
    app.add_option("--config", args.config, "Experiment config file (JSON)");
    app.add_option("--preset", args.preset, "Embedded preset name");
    app.add_option("--out", args.out, "Output path, '-' for stdout");
    app.add_option("--seed", args.seed, "Override the config seed");
    app.add_option("--threads", args.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_flag("--json", args.json, "Write JSON records instead of CSV");
    app.add_option("--dump-preset", dump_preset, "Print the expanded config of a preset and exit");
    app.add_flag("--list-presets", list_presets, "List embedded presets and exit");

    auto *fi_sweep = app.add_subcommand("fi-sweep", "Total FI per scheme over an n_bar sweep");
    auto *aw_scan = app.add_subcommand("aw-scan", "Total FI over an A_w sweep at fixed n_bar");
    auto *optimal = app.add_subcommand("optimal-aw", "Maximize the WVA FI over A_w");
    std::optional<double> lo, hi;
    double tol = 1e-3;
    optimal->add_option("--lo", lo, "Lower end of the A_w interval (default: sweep min)");
    optimal->add_option("--hi", hi, "Upper end of the A_w interval (default: sweep max)");
    optimal->add_option("--tol", tol, "Tolerance on A_w");
    auto *effects = app.add_subcommand("effect-matrix", "WVA advantage for every pair of camera imperfections");
    auto *profiles = app.add_subcommand("profiles", "Incident and measured beam profiles for CM and WVA");
    auto *estimate = app.add_subcommand("estimate", "Monte Carlo estimator efficiency against the CRB");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (list_presets) {
            for (const auto &name : wvasat::preset_names()) {
                std::cout << name << '\n';
            }
            return kOk;
        }
        if (!dump_preset.empty()) {
            std::cout << wvasat::to_json(wvasat::load_preset(dump_preset)).dump(2) << '\n';
            return kOk;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return kConfigError;
        }

        auto cfg = load(args);
        wvasat::RunOptions options;
        options.threads = args.threads;

        if (fi_sweep->parsed()) {
            emit(wvasat::sweep_table(wvasat::run_fi_sweep(cfg, options)), args, cfg);
        } else if (aw_scan->parsed()) {
            auto result = wvasat::run_aw_scan(cfg, options);
            emit(wvasat::sweep_table(result), args, cfg);
            if (result.argmax) {
                const auto &best = result.rows[*result.argmax];
                std::fprintf(stderr, "argmax A_w = %.6g  FI = %.6g\n", best.scheme.a_w, best.fi_total);
            }
        } else if (optimal->parsed()) {
            double a = lo.value_or(cfg.sweep && cfg.sweep->variable == wvasat::SweepVariable::AW ? cfg.sweep->min : 1.0);
            double b = hi.value_or(cfg.sweep && cfg.sweep->variable == wvasat::SweepVariable::AW ? cfg.sweep->max : 5.0);
            emit(wvasat::optimal_table(wvasat::find_optimal_aw(cfg, a, b, tol, options)), args, cfg);
        } else if (effects->parsed()) {
            auto matrix = wvasat::run_effect_matrix(cfg, options);
            emit(wvasat::effect_table(matrix), args, cfg);
            std::cerr << wvasat::format_effect_table(matrix);
        } else if (profiles->parsed()) {
            emit(wvasat::profile_table(wvasat::render_profiles(cfg)), args, cfg);
        } else if (estimate->parsed()) {
            emit(wvasat::estimate_table(wvasat::run_estimates(cfg, options)), args, cfg);
        }
    } catch (const wvasat::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const wvasat::NumericalDiagnosticError &e) {
        std::cerr << "numerical diagnostic failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::domain_error &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
