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

#ifndef WVKIT_SERIALIZE_H
#define WVKIT_SERIALIZE_H

// JSON encodings. Complex numbers are [re, im]; a matrix is a list of rows; a
// vector is a flat list. Plain numbers are accepted wherever a complex entry is.

#include <nlohmann/json.hpp>

#include "wvkit/estimator.h"
#include "wvkit/twotime.h"

namespace wvkit {

using json = nlohmann::json;

json complex_to_json(complex z);
complex complex_from_json(const json &j);

json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j);

json vector_to_json(const ComplexVector &v);
ComplexVector vector_from_json(const json &j);

json to_json(const OutcomeDistribution &dist);
OutcomeDistribution distribution_from_json(const json &j);

json to_json(const SampleBatch &batch);
SampleBatch batch_from_json(const json &j);

json to_json(const EstimateReport &report);
EstimateReport report_from_json(const json &j);

json to_json(const TwoTimeState &state);
TwoTimeState two_time_state_from_json(const json &j);

}  // namespace wvkit

#endif
