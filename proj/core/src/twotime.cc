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

#include "wvkit/twotime.h"

#include <cmath>
#include <sstream>

namespace wvkit {

namespace {

ComplexMatrix matrix_unit(size_t d, size_t i, size_t j) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

void require_operator(const ComplexMatrix &a, size_t d, const char *what) {
    if (!is_square(a) || (size_t)a.rows() != d) {
        throw DimensionMismatch(std::string(what) + ": operator dimension does not match the two-time state");
    }
}

}  // namespace

TwoTimeVector TwoTimeVector::from_states(const ComplexVector &psi_in, const ComplexVector &psi_fin) {
    if (psi_in.size() != psi_fin.size()) {
        throw DimensionMismatch("two-time vector: initial and final vectors differ in dimension");
    }
    return {outer(psi_in, psi_fin)};
}

TwoTimeVector TwoTimeVector::from_terms(const std::vector<std::pair<ComplexVector, ComplexVector>> &terms) {
    if (terms.empty()) {
        throw InvalidArgument("two-time vector: at least one term required");
    }
    size_t d = terms.front().first.size();
    ComplexMatrix l = ComplexMatrix::Zero(d, d);
    for (const auto &[psi, psi_p] : terms) {
        if ((size_t)psi.size() != d || (size_t)psi_p.size() != d) {
            throw DimensionMismatch("two-time vector: terms differ in dimension");
        }
        l += outer(psi, psi_p);
    }
    return {l};
}

complex eval_vector(const TwoTimeVector &lambda, const ComplexMatrix &a) {
    if (lambda.L.rows() != a.cols() || lambda.L.cols() != a.rows()) {
        throw DimensionMismatch("eval_vector: dimension mismatch");
    }
    return (lambda.L * a).trace();
}

TwoTimeVector adjoint_functional(const TwoTimeVector &lambda) {
    return {lambda.L.adjoint()};
}

TwoTimeState TwoTimeState::make(const ComplexMatrix &p, bool normalized, double tol) {
    if (!is_square(p)) {
        throw DimensionMismatch("two-time state operator must be square");
    }
    size_t d = factor_dimension(p.rows());
    if (!is_hermitian(p, std::max(tol, kDefaultTolerance))) {
        throw InvalidQuantumObject(
            InvalidQuantumObject::Predicate::kNotHermitian, "two-time state operator is not Hermitian");
    }
    double lowest = min_eigenvalue(p);
    if (lowest < -tol) {
        throw InvalidQuantumObject(
            InvalidQuantumObject::Predicate::kNegativeEigenvalue, "two-time state operator is not positive");
    }
    if (normalized && std::abs(swap_overlap(p) - 1.0) > kDefaultTolerance) {
        throw InvalidQuantumObject(
            InvalidQuantumObject::Predicate::kTraceNotOne, "normalized two-time state must have omega(I, I) = 1");
    }
    return TwoTimeState((p + p.adjoint()) / 2.0, d, normalized);
}

TwoTimeState pure_two_time_matrix(const TwoTimeVector &lambda) {
    ComplexVector l = double_ket(lambda.L);
    return TwoTimeState::make(projector(l), false);
}

complex eval_state(const TwoTimeState &omega, const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t d = omega.dim();
    require_operator(a, d, "eval_state");
    require_operator(b, d, "eval_state");
    // Tr[X (A (x) B)] with X = P^{T2} SWAP, contracted index by index so the d^2 x d^2
    // Kronecker product is never formed.
    ComplexMatrix x = partial_transpose_2(omega.P(), d, d) * swap_operator(d);
    complex total = 0;
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            for (size_t k = 0; k < d; k++) {
                for (size_t l = 0; l < d; l++) {
                    total += x(i * d + j, k * d + l) * a(k, i) * b(l, j);
                }
            }
        }
    }
    return total;
}

FunctionalTable FunctionalTable::tabulate(
    size_t d, const std::function<complex(const ComplexMatrix &, const ComplexMatrix &)> &omega) {
    FunctionalTable t{d, ComplexMatrix(d * d, d * d)};
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            ComplexMatrix eij = matrix_unit(d, i, j);
            for (size_t k = 0; k < d; k++) {
                for (size_t l = 0; l < d; l++) {
                    t.values(i * d + j, k * d + l) = omega(eij, matrix_unit(d, k, l));
                }
            }
        }
    }
    return t;
}

complex FunctionalTable::evaluate(const ComplexMatrix &a, const ComplexMatrix &b) const {
    // Bilinear expansion over matrix units: A = sum a_ij E_ij.
    return double_ket(a).transpose() * values * double_ket(b);
}

TwoTimeState state_from_functional(const FunctionalTable &table, double tol) {
    size_t d = table.d;
    if ((size_t)table.values.rows() != d * d || (size_t)table.values.cols() != d * d) {
        throw DimensionMismatch("functional table must be d^2 x d^2");
    }
    // omega(E_ij, E_kl) = <<E_ji| P |E_kl>> = <j i| P |k l>.
    ComplexMatrix p(d * d, d * d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            for (size_t k = 0; k < d; k++) {
                for (size_t l = 0; l < d; l++) {
                    p(j * d + i, k * d + l) = table.values(i * d + j, k * d + l);
                }
            }
        }
    }
    double herm_dev = max_abs_diff(p, p.adjoint());
    HermitianEigen eig = hermitian_eigen(p);
    double lowest = eig.values(0);
    if (lowest < -tol || herm_dev > std::max(tol, kDefaultTolerance)) {
        // <<A^dagger|P|A^dagger>> = omega(A, A^dagger) for A^dagger = unvec(v).
        ComplexVector v = eig.vectors.col(0);
        ComplexMatrix witness = from_double_ket(v).adjoint();
        complex value = table.evaluate(witness, witness.adjoint());
        std::ostringstream msg;
        msg << "functional is not a two-time state: reconstructed operator has eigenvalue " << lowest;
        if (herm_dev > std::max(tol, kDefaultTolerance)) {
            msg << " and is not Hermitian (deviation " << herm_dev << ")";
        }
        throw NotATwoTimeState(msg.str(), witness, value, lowest);
    }
    return TwoTimeState::make(p, false, tol);
}

double swap_overlap(const ComplexMatrix &rho) {
    size_t d = factor_dimension(rho.rows());
    complex via_swap = (partial_transpose_2(rho, d, d) * swap_operator(d)).trace();
    ComplexVector phi = max_entangled_unnorm(d);
    complex via_ket = phi.dot(rho * phi);
    if (std::abs(via_swap - via_ket) > 1e-9 * std::max(1.0, std::abs(via_ket))) {
        throw Error("swap_overlap: Tr[rho^T2 SWAP] and <<I|rho|I>> disagree");
    }
    return via_swap.real();
}

double swap_overlap(const DensityMatrix &rho) {
    return swap_overlap(rho.mat());
}

TwoTimeState normalized_from_density(const DensityMatrix &rho, double tol) {
    double overlap = swap_overlap(rho);
    if (overlap <= tol) {
        throw ZeroSwapOverlap(
            "Tr[rho^T2 SWAP] = <<I|rho|I>> vanishes: the state has no overlap with the maximally entangled state");
    }
    return TwoTimeState::make(rho.mat() / overlap, true);
}

PptCheck is_ppt(const DensityMatrix &rho, double tol) {
    size_t dA, dB;
    if (rho.dims().size() == 2) {
        dA = rho.dims()[0];
        dB = rho.dims()[1];
    } else {
        dA = dB = factor_dimension(rho.dim());
    }
    double lowest = min_eigenvalue(partial_transpose_2(rho.mat(), dA, dB));
    return {lowest >= -tol, lowest};
}

complex pseudo_expectation(const DensityMatrix &rho, const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    size_t d = factor_dimension(rho.dim());
    require_operator(a, d, "pseudo_expectation");
    require_operator(b, d, "pseudo_expectation");
    ComplexMatrix rs = rho.mat() * swap_operator(d);
    complex denom = rs.trace();
    if (std::abs(denom) <= tol) {
        throw ZeroSwapOverlap("Tr[rho SWAP] vanishes: the pseudo-expectation is undefined");
    }
    return (rs * kron(a, b)).trace() / denom;
}

DensityMatrix universal_transpose(const DensityMatrix &rho) {
    size_t d = rho.dim();
    return DensityMatrix::make((rho.mat().transpose() + identity(d)) / (double)(d + 1), rho.dims());
}

std::vector<double> convex_weight_transport(const std::vector<std::pair<double, DensityMatrix>> &components) {
    if (components.empty()) {
        throw InvalidArgument("convex_weight_transport: no components");
    }
    double psum = 0;
    for (const auto &c : components) {
        if (c.first < 0) {
            throw InvalidArgument("convex_weight_transport: negative mixing weight");
        }
        psum += c.first;
    }
    if (std::abs(psum - 1.0) > kDefaultTolerance) {
        throw InvalidArgument("convex_weight_transport: mixing weights must sum to 1");
    }
    std::vector<double> q;
    double denom = 0;
    for (const auto &[p, rho] : components) {
        q.push_back(p * swap_overlap(rho));
        denom += q.back();
    }
    if (denom <= kDefaultTolerance) {
        throw ZeroSwapOverlap("convex_weight_transport: mixture has zero overlap with |I>>");
    }
    for (double &x : q) {
        x /= denom;
    }
    return q;
}

}  // namespace wvkit
