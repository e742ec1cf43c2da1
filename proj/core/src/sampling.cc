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

#include "wvkit/sampling.h"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "wvkit/errors.h"

namespace wvkit {

namespace {

constexpr uint64_t kChunkSize = uint64_t{1} << 16;

enum StreamTag : uint32_t { kTagRandom4 = 1, kTagReal = 2, kTagImag = 3, kTagDerive = 4 };

std::mt19937_64 stream(uint64_t seed, uint32_t tag, uint64_t index) {
    std::seed_seq seq{
        (uint32_t)seed, (uint32_t)(seed >> 32), tag, (uint32_t)index, (uint32_t)(index >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64 &rng) {
    return (double)(rng() >> 11) * 0x1.0p-53;
}

// One categorical distribution to draw from, and where each category lands in the counts table.
struct SubBatch {
    uint32_t tag;
    uint64_t draws;
    std::vector<double> cdf;
    std::vector<size_t> slot;
    size_t last_positive;
};

SubBatch make_sub_batch(uint32_t tag, uint64_t draws, const std::vector<double> &probs, std::vector<size_t> slot) {
    SubBatch b{tag, draws, {}, std::move(slot), 0};
    b.cdf.resize(probs.size());
    double acc = 0;
    for (size_t i = 0; i < probs.size(); i++) {
        acc += probs[i];
        b.cdf[i] = acc;
        if (probs[i] > 0) {
            b.last_positive = i;
        }
    }
    return b;
}

void run_chunk(const SubBatch &b, uint64_t seed, uint64_t chunk, std::vector<uint64_t> &counts) {
    std::mt19937_64 rng = stream(seed, b.tag, chunk);
    uint64_t begin = chunk * kChunkSize;
    uint64_t n = std::min(kChunkSize, b.draws - begin);
    for (uint64_t s = 0; s < n; s++) {
        double u = uniform01(rng);
        size_t i = std::upper_bound(b.cdf.begin(), b.cdf.end(), u) - b.cdf.begin();
        counts[b.slot[std::min(i, b.last_positive)]]++;
    }
}

}  // namespace

std::string_view mode_name(SamplingMode mode) {
    return mode == SamplingMode::kSplit ? "split" : "random4";
}

SamplingMode parse_mode(std::string_view name) {
    if (name == "split") {
        return SamplingMode::kSplit;
    }
    if (name == "random4") {
        return SamplingMode::kRandom4;
    }
    throw InvalidArgument("unknown sampling mode '" + std::string(name) + "' (expected split or random4)");
}

uint64_t SampleBatch::k_real() const {
    return mode == SamplingMode::kSplit ? k / 2 : k;
}

uint64_t SampleBatch::k_imag() const {
    return mode == SamplingMode::kSplit ? k - k / 2 : 0;
}

uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return stream(seed, kTagDerive, index)();
}

SampleBatch sample(const OutcomeDistribution &dist, uint64_t k, uint64_t seed, SamplingMode mode, unsigned workers) {
    if (k == 0) {
        throw InvalidArgument("sample: K must be at least 1");
    }
    size_t n = dist.num_measurement_outcomes();
    SampleBatch batch{dist.shape(), std::vector<uint64_t>(n * kControlOutcomes, 0), k, seed, mode};

    std::vector<SubBatch> subs;
    if (mode == SamplingMode::kRandom4) {
        std::vector<size_t> slot(n * kControlOutcomes);
        for (size_t i = 0; i < slot.size(); i++) {
            slot[i] = i;
        }
        subs.push_back(make_sub_batch(kTagRandom4, k, dist.probabilities(), std::move(slot)));
    } else {
        for (auto [basis, tag, draws] : {std::tuple{ControlBasis::kReal, kTagReal, batch.k_real()},
                                         std::tuple{ControlBasis::kImaginary, kTagImag, batch.k_imag()}}) {
            size_t offset = basis == ControlBasis::kReal ? 0 : 2;
            std::vector<size_t> slot(n * 2);
            for (size_t m = 0; m < n; m++) {
                slot[m * 2] = m * kControlOutcomes + offset;
                slot[m * 2 + 1] = m * kControlOutcomes + offset + 1;
            }
            if (draws > 0) {
                subs.push_back(make_sub_batch(tag, draws, dist.conditional(basis), std::move(slot)));
            }
        }
    }

    std::vector<std::pair<size_t, uint64_t>> tasks;
    for (size_t b = 0; b < subs.size(); b++) {
        for (uint64_t c = 0; c * kChunkSize < subs[b].draws; c++) {
            tasks.emplace_back(b, c);
        }
    }

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = (unsigned)std::min<size_t>(workers, tasks.size());

    std::atomic<size_t> next{0};
    std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(batch.counts.size(), 0));
    auto work = [&](unsigned w) {
        for (size_t t = next++; t < tasks.size(); t = next++) {
            run_chunk(subs[tasks[t].first], seed, tasks[t].second, partial[w]);
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (const auto &p : partial) {
        for (size_t i = 0; i < p.size(); i++) {
            batch.counts[i] += p[i];
        }
    }
    return batch;
}

}  // namespace wvkit
