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

#include "wvkit/serialize.h"

#include "wvkit/errors.h"

namespace wvkit {

json complex_to_json(complex z) {
    return json::array({z.real(), z.imag()});
}

complex complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw InvalidArgument("expected a number or a [re, im] pair");
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw InvalidArgument("expected a matrix as a non-empty list of rows");
    }
    size_t rows = j.size(), cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw InvalidArgument("matrix rows have different lengths");
        }
        for (size_t c = 0; c < cols; c++) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

json vector_to_json(const ComplexVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

ComplexVector vector_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw InvalidArgument("expected a vector as a non-empty list");
    }
    ComplexVector v(j.size());
    for (size_t i = 0; i < j.size(); i++) {
        v(i) = complex_from_json(j[i]);
    }
    return v;
}

json to_json(const OutcomeDistribution &dist) {
    return {
        {"shape", dist.shape()},
        {"control_outcomes", kControlOutcomes},
        {"probabilities", dist.probabilities()},
    };
}

OutcomeDistribution distribution_from_json(const json &j) {
    return OutcomeDistribution::make(
        j.at("shape").get<std::vector<size_t>>(), j.at("probabilities").get<std::vector<double>>());
}

json to_json(const SampleBatch &batch) {
    return {
        {"shape", batch.shape},
        {"counts", batch.counts},
        {"k", batch.k},
        {"seed", batch.seed},
        {"mode", mode_name(batch.mode)},
    };
}

SampleBatch batch_from_json(const json &j) {
    SampleBatch b;
    b.shape = j.at("shape").get<std::vector<size_t>>();
    b.counts = j.at("counts").get<std::vector<uint64_t>>();
    b.k = j.at("k").get<uint64_t>();
    b.seed = j.at("seed").get<uint64_t>();
    b.mode = parse_mode(j.at("mode").get<std::string>());
    return b;
}

json to_json(const EstimateReport &r) {
    return {
        {"estimate", complex_to_json(r.estimate)},
        {"numerator", complex_to_json(r.numerator)},
        {"mu_hat", r.mu_hat},
        {"k", r.k},
        {"delta", r.delta},
        {"x_max", r.x_max},
        {"epsilon_nu", r.epsilon_nu},
        {"epsilon_mu", r.epsilon_mu},
        {"epsilon_total", r.epsilon_total ? json(*r.epsilon_total) : json(nullptr)},
        {"bounded", r.epsilon_total.has_value()},
        {"seed", r.seed},
        {"mode", mode_name(r.mode)},
    };
}

EstimateReport report_from_json(const json &j) {
    EstimateReport r;
    r.estimate = complex_from_json(j.at("estimate"));
    r.numerator = complex_from_json(j.at("numerator"));
    r.mu_hat = j.at("mu_hat").get<double>();
    r.k = j.at("k").get<uint64_t>();
    r.delta = j.at("delta").get<double>();
    r.x_max = j.at("x_max").get<double>();
    r.epsilon_nu = j.at("epsilon_nu").get<double>();
    r.epsilon_mu = j.at("epsilon_mu").get<double>();
    if (!j.at("epsilon_total").is_null()) {
        r.epsilon_total = j.at("epsilon_total").get<double>();
    }
    r.seed = j.at("seed").get<uint64_t>();
    r.mode = parse_mode(j.at("mode").get<std::string>());
    return r;
}

json to_json(const TwoTimeState &state) {
    return {
        {"dim", state.dim()},
        {"normalized", state.normalized()},
        {"P", matrix_to_json(state.P())},
    };
}

TwoTimeState two_time_state_from_json(const json &j) {
    return TwoTimeState::make(matrix_from_json(j.at("P")), j.value("normalized", false));
}

}  // namespace wvkit
