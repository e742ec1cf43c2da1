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

#ifndef WVKIT_TWOTIME_H
#define WVKIT_TWOTIME_H

// Two-time vectors and two-time density matrices.
//
// A two-time vector is any linear functional lambda(A) = Tr[L A] on operators.
// A two-time density matrix is a bilinear functional omega(A, B) that is stored
// through the unique positive operator P on H (x) H with
//
//     omega(A, B) = Tr[P^{T2} SWAP (A (x) B)] = <<A^dagger| P |B>>.
//
// Positivity of P is equivalent to omega(A, A^dagger) >= 0 for every A.

#include <functional>
#include <utility>
#include <vector>

#include "wvkit/errors.h"
#include "wvkit/qobjects.h"

namespace wvkit {

/// Thrown when a functional table reconstructs to an indefinite operator. Carries
/// an operator A with omega(A, A^dagger) < 0 as proof.
class NotATwoTimeState : public Error {
   public:
    NotATwoTimeState(const std::string &what, ComplexMatrix witness, complex witness_value, double min_eigenvalue)
        : Error(what), witness(std::move(witness)), witness_value(witness_value), min_eigenvalue(min_eigenvalue) {
    }
    ComplexMatrix witness;
    complex witness_value;
    double min_eigenvalue;
};

struct TwoTimeVector {
    /// Representing matrix: lambda(A) = Tr[L A].
    ComplexMatrix L;

    /// lambda(A) = <psi_fin|A|psi_in>, i.e. L = |psi_in><psi_fin|.
    static TwoTimeVector from_states(const ComplexVector &psi_in, const ComplexVector &psi_fin);
    /// lambda(A) = sum_i <psi'_i|A|psi_i> for pairs (psi_i, psi'_i).
    static TwoTimeVector from_terms(const std::vector<std::pair<ComplexVector, ComplexVector>> &terms);
};

complex eval_vector(const TwoTimeVector &lambda, const ComplexMatrix &a);
/// lambda^dagger(A) = conj(lambda(A^dagger)), represented by L^dagger.
TwoTimeVector adjoint_functional(const TwoTimeVector &lambda);

class TwoTimeState {
   public:
    /// Wraps P after checking it is positive semidefinite (eigenvalues >= -tol).
    /// With `normalized` set, also checks omega(I, I) = 1.
    static TwoTimeState make(const ComplexMatrix &p, bool normalized = false, double tol = 1e-9);

    const ComplexMatrix &P() const {
        return p_;
    }
    /// Single-system dimension d (P is d^2 x d^2).
    size_t dim() const {
        return d_;
    }
    bool normalized() const {
        return normalized_;
    }

   private:
    TwoTimeState(ComplexMatrix p, size_t d, bool normalized) : p_(std::move(p)), d_(d), normalized_(normalized) {
    }
    ComplexMatrix p_;
    size_t d_;
    bool normalized_;
};

/// E_lambda(A, B) = lambda(A) lambda^dagger(B); P = |L>><<L| (rank one).
TwoTimeState pure_two_time_matrix(const TwoTimeVector &lambda);

/// omega(A, B) = Tr[P^{T2} SWAP (A (x) B)].
complex eval_state(const TwoTimeState &omega, const ComplexMatrix &a, const ComplexMatrix &b);

/// Values omega(E_ij, E_kl) on matrix units E_ij = |i><j|, stored at row i*d+j,
/// column k*d+l.
struct FunctionalTable {
    size_t d;
    ComplexMatrix values;

    static FunctionalTable tabulate(
        size_t d, const std::function<complex(const ComplexMatrix &, const ComplexMatrix &)> &omega);
    complex evaluate(const ComplexMatrix &a, const ComplexMatrix &b) const;
};

/// Rebuilds the unique P reproducing the table; throws NotATwoTimeState when P is
/// not positive semidefinite within `tol`.
TwoTimeState state_from_functional(const FunctionalTable &table, double tol = 1e-9);

/// Tr[rho^{T2} SWAP] for an operator on H (x) H; equals <<I|rho|I>>.
double swap_overlap(const ComplexMatrix &rho);
double swap_overlap(const DensityMatrix &rho);

/// omega_rho(A, B) = Tr[rho^{T2} SWAP (A (x) B)] / Tr[rho^{T2} SWAP], stored as
/// P = rho / Tr[rho^{T2} SWAP]. Throws ZeroSwapOverlap when the denominator is <= tol.
TwoTimeState normalized_from_density(const DensityMatrix &rho, double tol = 1e-12);

struct PptCheck {
    bool ppt;
    double min_eigenvalue;
};
PptCheck is_ppt(const DensityMatrix &rho, double tol = 1e-9);

/// Tr[rho SWAP (A (x) B)] / Tr[rho SWAP], the quantity the controlled-SWAP circuit
/// actually samples.
complex pseudo_expectation(
    const DensityMatrix &rho, const ComplexMatrix &a, const ComplexMatrix &b, double tol = 1e-12);

/// (rho^T + I) / (d + 1).
DensityMatrix universal_transpose(const DensityMatrix &rho);

/// Weights q_i with omega_{sum_i p_i rho_i} = sum_i q_i omega_{rho_i}.
std::vector<double> convex_weight_transport(const std::vector<std::pair<double, DensityMatrix>> &components);

}  // namespace wvkit

#endif
