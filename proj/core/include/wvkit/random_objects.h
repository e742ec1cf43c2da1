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

#ifndef WVKIT_RANDOM_OBJECTS_H
#define WVKIT_RANDOM_OBJECTS_H

// Seeded random quantum objects for property tests, benchmarks and presets.

#include <random>

#include "wvkit/qobjects.h"

namespace wvkit {

using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_ginibre(size_t rows, size_t cols, Rng &rng);
/// Haar-random unit vector.
ComplexVector random_ket(size_t d, Rng &rng);
/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(size_t d, Rng &rng);
/// G + G^dagger for Ginibre G.
ComplexMatrix random_hermitian(size_t d, Rng &rng);
/// G G^dagger with G of shape d x rank; rank 0 means full rank. Not normalized.
ComplexMatrix random_positive(size_t d, Rng &rng, size_t rank = 0);
/// Normalized random_positive.
DensityMatrix random_density(size_t d, Rng &rng, size_t rank = 0);
/// Random n-outcome POVM: S^{-1/2} G_j S^{-1/2} with S = sum_j G_j.
Povm random_povm(size_t d, size_t n, Rng &rng);
/// Random POVM with values uniform in [-1, 1], paired with the observable they define.
UnbiasedObservable random_unbiased_observable(size_t d, size_t n, Rng &rng);
/// sum_i p_i sigma_i (x) tau_i with tau_i real symmetric, so the state is unchanged
/// by partial transposition of the second factor.
DensityMatrix random_ppt_invariant(size_t d, size_t terms, Rng &rng);

}  // namespace wvkit

#endif
