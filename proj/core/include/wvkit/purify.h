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

#ifndef WVKIT_PURIFY_H
#define WVKIT_PURIFY_H

// Reductions of mixed-state and generalized weak values to pure pre- and
// post-selections on an enlarged space. Registers are ordered as listed in
// `register_dims`, the first being the system.

#include <optional>
#include <utility>
#include <vector>

#include "wvkit/qobjects.h"
#include "wvkit/twotime.h"

namespace wvkit {

struct PurifiedPair {
    ComplexVector psi_in;
    ComplexVector psi_fin;
    std::vector<size_t> register_dims;
    /// |<psi_fin|psi_in>|^2.
    double overlap;
};

/// Registers S, A1, A2, A3 (all of dimension d):
///   psi_in  = sum_m sqrt(r_m) |psi_m>_S |m>_A1 (x) (1/sqrt d) sum_j |j>_A2 |j>_A3
///   psi_fin = sum_n sqrt(r'_n) |psi'_n>_S |n>_A2 (x) |Gamma>_A1A3
/// with Gamma_mn = sqrt(r_m r'_n) <psi'_n|psi_m> / sqrt(Tr[rho_in rho_fin]).
/// W(A | rho_in, rho_fin) = W(A (x) I (x) I (x) I | psi_in, psi_fin) and the overlap is
/// Tr[rho_in rho_fin] / d.
PurifiedPair vaidman_purification(const DensityMatrix &rho_in, const DensityMatrix &rho_fin);

/// Registers S1, S2, A1, A2: psi_in = Psi_S1A1 (x) Phi_S2A2, psi_fin = Phi_S1A2 (x) Psi_S2A1,
/// where Psi purifies rho_in and Phi purifies rho_fin.
/// W_2(A, B | rho_in, rho_fin) = W(A (x) B (x) I (x) I | psi_in, psi_fin) and the overlap
/// is Tr[rho_in rho_fin]^2.
PurifiedPair double_purification(const DensityMatrix &rho_in, const DensityMatrix &rho_fin);

/// Sum_i sqrt(r_i) |psi_i> (x) |i> over the eigendecomposition of rho.
ComplexVector purify_state(const DensityMatrix &rho);

/// ops[0] (x) ops[1] (x) ... (x) I on the remaining registers.
ComplexMatrix embed_leading(const std::vector<ComplexMatrix> &ops, const std::vector<size_t> &register_dims);

/// Pure pre/post-selection for a two-time vector lambda(A) = sum_i <psi'_i|A|psi_i>,
/// using an auxiliary register of dimension N (system first, auxiliary second).
struct AvExtension {
    /// Normalized extended vectors.
    PurifiedPair pair;
    /// Unnormalized sum_i |psi_i>|i> and sum_i |psi'_i>|i>.
    ComplexVector raw_in;
    ComplexVector raw_fin;
    TwoTimeVector lambda;
    /// Normalized two-time state of |psi_in><psi_in| (x) (|psi_fin><psi_fin|)^T; absent when lambda(I) = 0.
    std::optional<TwoTimeState> state;

    /// Lambda(X) = <raw_fin| X |raw_in>; equals lambda(A) for X = A (x) I_aux.
    complex extended_functional(const ComplexMatrix &x) const;
    /// lambda(A) / lambda(I). Throws OrthogonalPrePostSelection when lambda(I) = 0.
    complex normalized_functional(const ComplexMatrix &a) const;
    /// E_lambda(A, B) / E_lambda(I, I) with E_lambda(A, B) = lambda(A) conj(lambda(B^dagger)).
    complex normalized_pair_functional(const ComplexMatrix &a, const ComplexMatrix &b) const;
    /// omega(A (x) I_aux, B (x) I_aux) under `state`.
    complex state_value(const ComplexMatrix &a, const ComplexMatrix &b) const;
};

AvExtension av_extension(const std::vector<std::pair<ComplexVector, ComplexVector>> &terms);

}  // namespace wvkit

#endif
