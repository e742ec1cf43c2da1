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

#include "wvkit/protocol.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "wvkit/errors.h"

namespace wvkit {

namespace {

constexpr double kClipTolerance = 1e-12;
constexpr double kSumTolerance = 1e-10;

// Heaviside step with theta(0) = 1.
constexpr double theta(int t) {
    return t >= 0 ? 1.0 : 0.0;
}

constexpr double sign(size_t c) {
    return c % 2 == 0 ? 1.0 : -1.0;
}

// p(m, c) from the three traces that appear in every variant:
//   direct  = Tr[Pi_m rho],  swapped = Tr[Pi_m SWAP rho SWAP],  q = Tr[Pi_m rho SWAP].
OutcomeDistribution from_swap_terms(
    std::vector<size_t> shape,
    const std::vector<double> &direct,
    const std::vector<double> &swapped,
    const std::vector<complex> &q) {
    std::vector<double> probs(direct.size() * kControlOutcomes);
    for (size_t m = 0; m < direct.size(); m++) {
        for (size_t c = 0; c < kControlOutcomes; c++) {
            int ci = (int)c;
            probs[m * kControlOutcomes + c] = (direct[m] + swapped[m] + 2 * theta(1 - ci) * sign(c) * q[m].real() -
                                               2 * theta(ci - 2) * sign(c) * q[m].imag()) /
                                              8.0;
        }
    }
    return OutcomeDistribution::make(std::move(shape), std::move(probs));
}

void require_dim(size_t expected, size_t actual, const char *what) {
    if (expected != actual) {
        throw DimensionMismatch(std::string(what) + ": dimension mismatch");
    }
}

size_t joint_factor_dimension(const DensityMatrix &rho_joint) {
    if (rho_joint.dims().size() == 2 && rho_joint.dims()[0] != rho_joint.dims()[1]) {
        throw DimensionMismatch("joint state must have two equal factors");
    }
    return factor_dimension(rho_joint.dim());
}

}  // namespace

const std::array<ComplexMatrix, kControlOutcomes> &control_povm() {
    static const std::array<ComplexMatrix, kControlOutcomes> povm = {
        projector(kets::plus()) / 2.0,
        projector(kets::minus()) / 2.0,
        projector(kets::plus_i()) / 2.0,
        projector(kets::minus_i()) / 2.0,
    };
    return povm;
}

ComplexMatrix controlled_swap_gate(size_t d) {
    ComplexMatrix p0 = projector(kets::zero());
    ComplexMatrix p1 = projector(kets::one());
    return kron(identity(d * d), p0) + kron(swap_operator(d), p1);
}

OutcomeDistribution OutcomeDistribution::make(std::vector<size_t> shape, std::vector<double> probabilities) {
    size_t expected = std::accumulate(shape.begin(), shape.end(), size_t{1}, std::multiplies<>()) * kControlOutcomes;
    if (probabilities.size() != expected) {
        throw DimensionMismatch("outcome table size does not match its shape");
    }
    double total = 0;
    for (double &p : probabilities) {
        if (p < -kClipTolerance) {
            std::ostringstream msg;
            msg << "outcome probability " << p << " is negative beyond rounding noise";
            throw NegativeProbability(msg.str());
        }
        if (p < 0) {
            p = 0;
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg << "outcome probabilities sum to " << total;
        throw InvalidArgument(msg.str());
    }
    for (double &p : probabilities) {
        p /= total;
    }
    return OutcomeDistribution(std::move(shape), std::move(probabilities));
}

std::vector<double> OutcomeDistribution::conditional(ControlBasis basis) const {
    size_t offset = basis == ControlBasis::kReal ? 0 : 2;
    size_t n = num_measurement_outcomes();
    std::vector<double> out(n * 2);
    for (size_t m = 0; m < n; m++) {
        out[m * 2] = 2 * (*this)(m, offset);
        out[m * 2 + 1] = 2 * (*this)(m, offset + 1);
    }
    return out;
}

OutcomeDistribution OutcomeDistribution::marginalize_last() const {
    if (shape_.size() < 2) {
        throw InvalidArgument("marginalize_last: need at least two measurement indices");
    }
    std::vector<size_t> shape(shape_.begin(), shape_.end() - 1);
    size_t last = shape_.back();
    size_t outer = num_measurement_outcomes() / last;
    std::vector<double> probs(outer * kControlOutcomes, 0.0);
    for (size_t a = 0; a < outer; a++) {
        for (size_t k = 0; k < last; k++) {
            for (size_t c = 0; c < kControlOutcomes; c++) {
                probs[a * kControlOutcomes + c] += (*this)(a * last + k, c);
            }
        }
    }
    return OutcomeDistribution(std::move(shape), std::move(probs));
}

OutcomeDistribution OutcomeDistribution::flattened() const {
    return OutcomeDistribution({num_measurement_outcomes()}, probabilities_);
}

OutcomeDistribution dist_fig1a(const Povm &povm, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    require_dim(povm.dim(), rho_in.dim(), "dist_fig1a");
    require_dim(povm.dim(), rho_fin.dim(), "dist_fig1a");
    ComplexMatrix prod = rho_in.mat() * rho_fin.mat();
    std::vector<double> probs;
    probs.reserve(povm.size() * kControlOutcomes);
    for (const auto &p : povm.elements()) {
        double tin = (p * rho_in.mat()).trace().real();
        double tfin = (p * rho_fin.mat()).trace().real();
        complex q = (p * prod).trace();
        for (size_t c = 0; c < kControlOutcomes; c++) {
            int ci = (int)c;
            probs.push_back(
                (tin + tfin + 2 * theta(1 - ci) * sign(c) * q.real() - 2 * theta(ci - 2) * sign(c) * q.imag()) / 8.0);
        }
    }
    return OutcomeDistribution::make({povm.size()}, std::move(probs));
}

OutcomeDistribution dist_fig1b(
    const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    size_t d = rho_in.dim();
    require_dim(d, rho_fin.dim(), "dist_fig1b");
    require_dim(d, povm_a.dim(), "dist_fig1b");
    require_dim(d, povm_b.dim(), "dist_fig1b");
    // Product structure: Tr[(P (x) Q) rho (x) rho'] = Tr[P rho] Tr[Q rho'] and
    // Tr[(P (x) Q)(rho (x) rho') SWAP] = Tr[P rho Q rho'].
    std::vector<double> direct, swapped;
    std::vector<complex> q;
    for (const auto &p : povm_a.elements()) {
        double p_in = (p * rho_in.mat()).trace().real();
        double p_fin = (p * rho_fin.mat()).trace().real();
        ComplexMatrix p_rho_in = p * rho_in.mat();
        for (const auto &qk : povm_b.elements()) {
            double q_in = (qk * rho_in.mat()).trace().real();
            double q_fin = (qk * rho_fin.mat()).trace().real();
            direct.push_back(p_in * q_fin);
            swapped.push_back(p_fin * q_in);
            q.push_back((p_rho_in * qk * rho_fin.mat()).trace());
        }
    }
    return from_swap_terms({povm_a.size(), povm_b.size()}, direct, swapped, q);
}

OutcomeDistribution dist_fig1c(const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_joint) {
    size_t d = joint_factor_dimension(rho_joint);
    require_dim(d, povm_a.dim(), "dist_fig1c");
    require_dim(d, povm_b.dim(), "dist_fig1c");
    OutcomeDistribution flat = dist_fig1d(Povm::product(povm_a, povm_b), rho_joint);
    return OutcomeDistribution::make({povm_a.size(), povm_b.size()}, flat.probabilities());
}

OutcomeDistribution dist_fig1d(const Povm &joint_povm, const DensityMatrix &rho_joint) {
    size_t d = joint_factor_dimension(rho_joint);
    require_dim(d * d, joint_povm.dim(), "dist_fig1d");
    ComplexMatrix s = swap_operator(d);
    ComplexMatrix rho = rho_joint.mat();
    ComplexMatrix rho_swapped = s * rho * s;
    ComplexMatrix rho_s = rho * s;
    std::vector<double> direct, swapped;
    std::vector<complex> q;
    for (const auto &pi : joint_povm.elements()) {
        direct.push_back((pi * rho).trace().real());
        swapped.push_back((pi * rho_swapped).trace().real());
        q.push_back((pi * rho_s).trace());
    }
    return from_swap_terms({joint_povm.size()}, direct, swapped, q);
}

OutcomeDistribution circuit_oracle(const Povm &joint_povm, const DensityMatrix &rho_joint, std::vector<size_t> shape) {
    size_t d = joint_factor_dimension(rho_joint);
    require_dim(d * d, joint_povm.dim(), "circuit_oracle");
    ComplexMatrix u = controlled_swap_gate(d);
    ComplexMatrix omega = kron(rho_joint.mat(), projector(kets::plus()));
    ComplexMatrix evolved = u * omega * u.adjoint();
    const auto &r = control_povm();
    std::vector<double> probs;
    for (const auto &pi : joint_povm.elements()) {
        for (size_t c = 0; c < kControlOutcomes; c++) {
            probs.push_back((kron(pi, r[c]) * evolved).trace().real());
        }
    }
    return OutcomeDistribution::make(std::move(shape), std::move(probs));
}

OutcomeDistribution circuit_oracle_fig1a(
    const Povm &povm, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    return circuit_oracle(
        Povm::product(povm, Povm::trivial(rho_fin.dim())), DensityMatrix::product(rho_in, rho_fin), {povm.size()});
}

OutcomeDistribution circuit_oracle_fig1b(
    const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    return circuit_oracle(
        Povm::product(povm_a, povm_b), DensityMatrix::product(rho_in, rho_fin), {povm_a.size(), povm_b.size()});
}

std::vector<complex> reweighted_measure(const OutcomeDistribution &dist) {
    std::vector<complex> q(dist.num_measurement_outcomes());
    for (size_t m = 0; m < q.size(); m++) {
        q[m] = 2.0 * complex(dist(m, 0) - dist(m, 1), -(dist(m, 2) - dist(m, 3)));
    }
    return q;
}

std::vector<complex> induced_measure_fig1b(
    const Povm &povm_a, const Povm &povm_b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    std::vector<complex> q;
    for (const auto &p : povm_a.elements()) {
        ComplexMatrix p_rho_in = p * rho_in.mat();
        for (const auto &qk : povm_b.elements()) {
            q.push_back((p_rho_in * qk * rho_fin.mat()).trace());
        }
    }
    return q;
}

std::vector<complex> induced_measure_joint(const Povm &joint_povm, const DensityMatrix &rho_joint) {
    size_t d = joint_factor_dimension(rho_joint);
    ComplexMatrix rho_s = rho_joint.mat() * swap_operator(d);
    std::vector<complex> q;
    for (const auto &pi : joint_povm.elements()) {
        q.push_back((pi * rho_s).trace());
    }
    return q;
}

}  // namespace wvkit
