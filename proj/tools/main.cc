// Copyright 2026 The wvkit Authors
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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wvkit_cli/runner.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;

struct Options {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::string out_path;
    std::string format = "json";
    std::optional<std::string> mode;
    bool timing = false;
    std::string axis;
    std::vector<double> values;
    bool values_given = false;
};

std::string remediation(const wvkit::PreconditionError &e) {
    if (dynamic_cast<const wvkit::OrthogonalPrePostSelection *>(&e)) {
        return "choose pre- and post-selected states with Tr[rho_in rho_fin] != 0";
    }
    if (dynamic_cast<const wvkit::OverlapTooSmall *>(&e)) {
        return "increase K (see `wvkit plan`) or choose states with a larger overlap";
    }
    if (dynamic_cast<const wvkit::ZeroSwapOverlap *>(&e)) {
        return "the joint state must overlap the maximally entangled state (Tr[rho SWAP] != 0)";
    }
    return "check the numerical preconditions of the chosen pipeline";
}

void emit(const Options &o, const std::string &text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) {
        throw wvkit::Error("cannot write output file '" + o.out_path + "'");
    }
    out << text;
}

wvkit::json load(const Options &o) {
    wvkit::json raw = wvkit::cli::load_config_file(o.config_path);
    if (o.seed) {
        raw["seed"] = *o.seed;
    }
    if (o.mode) {
        raw["mode"] = *o.mode;
    }
    return raw;
}

int run_command(const Options &o, wvkit::cli::Command command) {
    wvkit::cli::ExperimentConfig config = wvkit::cli::parse_config(load(o));
    wvkit::cli::RunReport report = wvkit::cli::run(config, command, {o.timing});
    emit(o, o.format == "csv" ? wvkit::cli::summary_csv(report) : report.to_json().dump(2) + "\n");
    return kExitOk;
}

int run_sweep(const Options &o) {
    wvkit::json raw = load(o);
    wvkit::cli::ExperimentConfig config = wvkit::cli::parse_config(raw);
    std::string axis = o.axis;
    std::vector<wvkit::json> values;
    if (config.sweep) {
        if (axis.empty()) {
            axis = config.sweep->axis;
        }
        values = config.sweep->values;
    }
    if (o.values_given) {
        values.assign(o.values.begin(), o.values.end());
    }
    if (axis.empty()) {
        throw wvkit::cli::ConfigError("/sweep/axis", "a sweep needs an axis (config sweep.axis or --axis)");
    }
    wvkit::cli::SweepResult result = wvkit::cli::sweep(raw, axis, values, {o.timing});
    emit(o, o.format == "csv" ? result.to_csv() : result.to_json().dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"wvkit: weak values from controlled-SWAP circuits"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", o.config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "Override the config seed");
        sub->add_option("--out", o.out_path, "Write the report here instead of stdout");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--mode", o.mode, "Control-qubit sampling mode")->check(CLI::IsMember({"split", "random4"}));
        sub->add_flag("--timing", o.timing, "Include wall-clock timing in the report");
    };

    struct Sub {
        const char *name;
        const char *help;
        wvkit::cli::Command command;
    };
    const Sub subs[] = {
        {"exact", "Closed-form values, no sampling", wvkit::cli::Command::kExact},
        {"estimate", "Monte Carlo estimate with error bounds", wvkit::cli::Command::kEstimate},
        {"plan", "Number of runs for a target error", wvkit::cli::Command::kPlan},
        {"twotime", "Two-time state of a joint density matrix", wvkit::cli::Command::kTwoTime},
        {"purify", "Purification and extension identities", wvkit::cli::Command::kPurify},
    };
    std::vector<std::pair<CLI::App *, wvkit::cli::Command>> commands;
    for (const auto &s : subs) {
        CLI::App *sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        commands.emplace_back(sub, s.command);
    }
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Run a config over a list of values of one field");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--axis", o.axis, "JSON pointer of the swept field, e.g. /K");
    CLI::Option *values_opt =
        sweep_cmd->add_option("--values", o.values, "Comma-separated values")->delimiter(',')->expected(0, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }
    o.values_given = values_opt->count() > 0;

    try {
        if (sweep_cmd->parsed()) {
            return run_sweep(o);
        }
        for (const auto &[sub, command] : commands) {
            if (sub->parsed()) {
                return run_command(o, command);
            }
        }
        return kExitOther;
    } catch (const wvkit::cli::ConfigError &e) {
        std::cerr << "config error at " << (e.path.empty() ? "<root>" : e.path) << ": " << e.message << "\n";
        return kExitConfig;
    } catch (const wvkit::PreconditionError &e) {
        std::cerr << "numerical precondition failed: " << e.what() << "\n  hint: " << remediation(e) << "\n";
        return kExitPrecondition;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
}
