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

#ifndef WVKIT_CLI_CONFIG_H
#define WVKIT_CLI_CONFIG_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wvkit/errors.h"
#include "wvkit/sampling.h"
#include "wvkit/serialize.h"

namespace wvkit::cli {

/// A config field failed validation. `path` is a JSON pointer to the field.
class ConfigError : public Error {
   public:
    ConfigError(std::string path, const std::string &message)
        : Error(path + ": " + message), path(std::move(path)), message(message) {
    }
    std::string path;
    std::string message;
};

enum class Variant { kFig1a, kFig1b, kFig1c, kFig1d, kExact, kTwoTime, kPurify, kPlan };

std::string_view variant_name(Variant v);

enum class PurifyMethod { kVaidman, kDouble, kAv };

struct PlanSpec {
    std::optional<double> epsilon;
    std::optional<double> x_max;
    std::optional<double> w_magnitude;
    std::optional<double> overlap;
};

struct SweepSpec {
    std::string axis;
    std::vector<json> values;
};

/// A validated experiment description. Everything that can be checked without
/// running the pipeline (shapes, predicates, dimension agreement) has been checked.
struct ExperimentConfig {
    json raw;
    Variant variant = Variant::kFig1a;

    std::optional<DensityMatrix> rho_in;
    std::optional<DensityMatrix> rho_fin;
    std::optional<DensityMatrix> rho_joint;
    std::optional<UnbiasedObservable> observable;
    std::optional<UnbiasedObservable> observable_b;
    std::optional<UnbiasedObservable> joint_observable;
    /// General (possibly non-Hermitian) operators for functional evaluations.
    std::optional<ComplexMatrix> operator_a;
    std::optional<ComplexMatrix> operator_b;
    std::vector<std::pair<ComplexVector, ComplexVector>> terms;
    PurifyMethod purify_method = PurifyMethod::kVaidman;

    uint64_t k = 10000;
    double delta = 0.05;
    uint64_t seed = 0;
    SamplingMode mode = SamplingMode::kSplit;
    unsigned workers = 0;
    PlanSpec plan;
    std::optional<SweepSpec> sweep;
};

/// Validation tolerance, overridable through the WVKIT_TOLERANCE environment variable.
ValidationTolerance tolerance_from_env();

ExperimentConfig parse_config(const json &raw, const ValidationTolerance &tol = tolerance_from_env());

/// Parses the file as JSON; syntax errors become ConfigError at path "".
json load_config_file(const std::string &path);

/// Parsing of the individual spec forms, exposed for tests.
DensityMatrix parse_state(const json &spec, const std::string &path, const ValidationTolerance &tol);
UnbiasedObservable parse_observable(const json &spec, const std::string &path, const ValidationTolerance &tol);
ComplexMatrix parse_operator(const json &spec, const std::string &path);

}  // namespace wvkit::cli

#endif
