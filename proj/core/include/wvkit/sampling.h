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

#ifndef WVKIT_SAMPLING_H
#define WVKIT_SAMPLING_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wvkit/protocol.h"

namespace wvkit {

enum class SamplingMode {
    /// floor(K/2) runs measure the control with {2R_0, 2R_1}, the rest with {2R_2, 2R_3}.
    kSplit,
    /// Every run uses the four-outcome POVM R_c.
    kRandom4,
};

std::string_view mode_name(SamplingMode mode);
SamplingMode parse_mode(std::string_view name);

/// Outcome counts of K simulated runs.
///
/// `counts` is laid out like OutcomeDistribution::probabilities (c fastest). In
/// split mode the c in {0, 1} entries hold the real-basis sub-batch and the
/// c in {2, 3} entries the imaginary-basis sub-batch, with control outcome
/// cbar = c mod 2.
struct SampleBatch {
    std::vector<size_t> shape;
    std::vector<uint64_t> counts;
    uint64_t k = 0;
    uint64_t seed = 0;
    SamplingMode mode = SamplingMode::kSplit;

    size_t num_measurement_outcomes() const {
        return counts.size() / kControlOutcomes;
    }
    uint64_t count(size_t m, size_t c) const {
        return counts[m * kControlOutcomes + c];
    }
    /// Runs in the real-basis sub-batch (all K in random4 mode).
    uint64_t k_real() const;
    /// Runs in the imaginary-basis sub-batch (0 in random4 mode).
    uint64_t k_imag() const;
};

/// Draws K runs from `dist`. The result depends only on (dist, k, seed, mode):
/// draws are generated in fixed-size chunks, each with its own generator seeded
/// from (seed, sub-batch, chunk index), and chunk counts are summed. `workers` = 0
/// uses the hardware concurrency.
SampleBatch sample(
    const OutcomeDistribution &dist, uint64_t k, uint64_t seed, SamplingMode mode = SamplingMode::kSplit,
    unsigned workers = 0);

/// Deterministic child seed for the `index`-th sub-task of a run seeded with `seed`.
uint64_t derive_seed(uint64_t seed, uint64_t index);

}  // namespace wvkit

#endif
