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

#ifndef WVKIT_CLI_RUNNER_H
#define WVKIT_CLI_RUNNER_H

#include <optional>
#include <string>
#include <vector>

#include "wvkit_cli/config.h"

namespace wvkit::cli {

inline constexpr const char *kToolkitVersion = "0.1.0";

enum class Command { kExact, kEstimate, kPlan, kTwoTime, kPurify };

std::string_view command_name(Command c);
/// The pipeline a variant runs when no subcommand picks one (used by sweeps).
Command default_command(Variant v);

struct RunReport {
    std::string command;
    std::string variant;
    json config;
    /// Closed-form values; null when not computable.
    json exact;
    /// Serialized EstimateReport; null for pipelines without sampling.
    json estimate;
    /// Flat scalar fields, one CSV column each.
    json summary;
    std::optional<double> elapsed_seconds;
    std::string version = kToolkitVersion;

    json to_json() const;
    static RunReport from_json(const json &j);
    bool operator==(const RunReport &other) const = default;
};

struct RunOptions {
    bool timing = false;
};

RunReport run(const ExperimentConfig &config, Command command, const RunOptions &options = {});

struct SweepResult {
    std::string axis;
    std::vector<json> values;
    json config;
    std::vector<RunReport> rows;

    json to_json() const;
    /// Header `axis_value` followed by the sorted union of summary keys.
    std::string to_csv() const;
};

/// Runs one cell per value with the field at JSON pointer `axis` replaced and the
/// seed replaced by derive_seed(seed, cell index). Rows follow the order of `values`.
SweepResult sweep(const json &raw_config, const std::string &axis, const std::vector<json> &values,
                  const RunOptions &options = {}, unsigned parallel_cells = 0);

/// Single-row CSV of a report's summary.
std::string summary_csv(const RunReport &report);

}  // namespace wvkit::cli

#endif
