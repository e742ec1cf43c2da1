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

#ifndef WVKIT_PROTOCOL_H
#define WVKIT_PROTOCOL_H

// Outcome distributions of the controlled-SWAP circuits.
//
// Two registers S1, S2 are prepared (in rho_in (x) rho_fin, or in a joint state),
// a control qubit in |+>, the gate U = I (x) |0><0| + SWAP (x) |1><1| is applied,
// the registers are measured and the control is measured with the four-outcome
// POVM R_c = {|+><+|, |-><-|, |+i><+i|, |-i><-i|} / 2.
//
// Every distribution is available twice: from closed-form trace expressions and
// from `circuit_oracle`, which simulates the full three-register density matrix.

#include <array>
#include <vector>

#include "wvkit/qobjects.h"

namespace wvkit {

inline constexpr size_t kControlOutcomes = 4;

/// Control-qubit measurement used for a sub-batch in split mode: {2R_0, 2R_1} or {2R_2, 2R_3}.
enum class ControlBasis { kReal, kImaginary };

/// R_0..R_3 on the control qubit; they sum to the identity.
const std::array<ComplexMatrix, kControlOutcomes> &control_povm();

/// U = I (x) I (x) |0><0| + SWAP (x) |1><1| on S1 S2 C.
ComplexMatrix controlled_swap_gate(size_t d);

/// Probability table over (measurement outcome, control outcome c), row-major with
/// c fastest. `shape` lists the measurement index ranges, e.g. {N} for (j, c) or
/// {N, M} for (j, k, c).
class OutcomeDistribution {
   public:
    /// Negative entries down to -1e-12 are clipped to zero and the table is renormalized;
    /// anything more negative raises NegativeProbability, a sum off by more than 1e-10
    /// raises InvalidArgument.
    static OutcomeDistribution make(std::vector<size_t> shape, std::vector<double> probabilities);

    const std::vector<size_t> &shape() const {
        return shape_;
    }
    const std::vector<double> &probabilities() const {
        return probabilities_;
    }
    size_t num_measurement_outcomes() const {
        return probabilities_.size() / kControlOutcomes;
    }
    double operator()(size_t m, size_t c) const {
        return probabilities_[m * kControlOutcomes + c];
    }

    /// Distribution of (m, cbar) given that the control was measured in `basis`:
    /// 2 p(m, cbar) or 2 p(m, cbar + 2). Length num_measurement_outcomes() * 2.
    std::vector<double> conditional(ControlBasis basis) const;

    /// Sums out the last measurement index ({N, M} -> {N}).
    OutcomeDistribution marginalize_last() const;
    /// Collapses the measurement shape to a single flat index.
    OutcomeDistribution flattened() const;

   private:
    OutcomeDistribution(std::vector<size_t> shape, std::vector<double> probabilities)
        : shape_(std::move(shape)), probabilities_(std::move(probabilities)) {
    }
    std::vector<size_t> shape_;
    std::vector<double> probabilities_;
};

/// Closed form p(j, c) = (1/8){Tr[P_j rho_in] + Tr[P_j rho_fin]
///     + 2 theta(1-c) (-1)^c Re Tr[P_j rho_in rho_fin] - 2 theta(c-2) (-1)^c Im Tr[P_j rho_in rho_fin]}.
OutcomeDistribution dist_fig1a(const Povm &povm, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);

/// Both copies measured, (P_j) on S1 and (Q_k) on S2; outcomes (j, k, c).
OutcomeDistribution dist_fig1b(
    const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);

/// As dist_fig1b but with a general joint state on S1 S2.
OutcomeDistribution dist_fig1c(const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_joint);

/// A joint POVM (Pi_j) on S1 S2 and a joint state; outcomes (j, c).
OutcomeDistribution dist_fig1d(const Povm &joint_povm, const DensityMatrix &rho_joint);

/// Full three-register simulation: Tr[(Pi_m (x) R_c) U (rho (x) |+><+|) U^dagger].
OutcomeDistribution circuit_oracle(const Povm &joint_povm, const DensityMatrix &rho_joint, std::vector<size_t> shape);
OutcomeDistribution circuit_oracle_fig1a(const Povm &povm, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);
OutcomeDistribution circuit_oracle_fig1b(
    const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);

/// The complex measure q(m) recovered from a distribution by the reweighting
/// q(m) = sum_c 2 (-1)^c [theta(1-c) - i theta(c-2)] p(m, c).
std::vector<complex> reweighted_measure(const OutcomeDistribution &dist);

/// q(j, k) = Tr[P_j rho_in Q_k rho_fin], flattened with k fastest.
std::vector<complex> induced_measure_fig1b(
    const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);
/// q(j) = Tr[Pi_j rho SWAP]; with a product POVM this is the fig1c measure.
std::vector<complex> induced_measure_joint(const Povm &joint_povm, const DensityMatrix &rho_joint);

}  // namespace wvkit

#endif
