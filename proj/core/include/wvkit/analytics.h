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

#ifndef WVKIT_ANALYTICS_H
#define WVKIT_ANALYTICS_H

// Exact weak values, WV measures and double weak values. These are the ground
// truth that every sampling-based estimate is compared against.

#include <optional>
#include <vector>

#include "wvkit/qobjects.h"

namespace wvkit {

/// |Tr[rho_in rho_fin]| at or below this is treated as zero overlap.
inline constexpr double kZeroOverlapTolerance = 1e-12;

struct WeakValue {
    complex value;
    /// Tr[rho_in rho_fin].
    double overlap;
    /// Set when the observable was not Hermitian; the value is still well defined.
    bool non_hermitian_observable = false;
};

/// q_j = Tr[P_j rho_in rho_fin]; normalization = sum_j q_j = Tr[rho_in rho_fin].
struct WvMeasure {
    std::vector<complex> values;
    complex normalization;
};

/// W = Tr[rho_fin A rho_in] / Tr[rho_fin rho_in].
WeakValue weak_value(const ComplexMatrix &a, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);
/// Pure-state form <psi_fin|A|psi_in> / <psi_fin|psi_in> (vectors need not be normalized).
complex weak_value(const ComplexMatrix &a, const ComplexVector &psi_in, const ComplexVector &psi_fin);

WvMeasure wv_measure(const Povm &povm, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);

/// E_q(X) / E_q(Y) with X: j -> x_j and Y = 1.
WeakValue wv_from_measure(const UnbiasedObservable &obs, const WvMeasure &q);

/// W2 = Tr[A rho_in B rho_fin] / Tr[rho_in rho_fin].
complex double_weak_value(
    const ComplexMatrix &a, const ComplexMatrix &b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);

struct CorrelationTerm {
    size_t m;
    size_t n;
    /// p(m, n) = r_m r'_n |<psi_m|psi'_n>|^2 / sum_{ij} r_i r'_j |<psi_i|psi'_j>|^2.
    double weight;
    /// W(A|psi_m, psi'_n) W(B|psi'_n, psi_m); empty when <psi_m|psi'_n> = 0.
    std::optional<complex> term;
};

struct CorrelationDecomposition {
    /// Eigenvalues and eigenvectors actually used (zero eigenvalues are dropped).
    std::vector<double> r_in;
    std::vector<double> r_fin;
    std::vector<CorrelationTerm> terms;

    /// sum_{m,n} p(m,n) * term(m,n), skipping undefined terms (which carry zero weight).
    complex resum() const;
};

/// Expands W2(A, B | rho_in, rho_fin) over the eigendecompositions of the two states.
CorrelationDecomposition dwv_correlation_decomposition(
    const DensityMatrix &rho_in, const DensityMatrix &rho_fin, const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace wvkit

#endif
