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

#include "wvkit/analytics.h"

#include <cmath>

#include "wvkit/errors.h"

namespace wvkit {

namespace {

void require_same_dim(const ComplexMatrix &a, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    if (!is_square(a) || (size_t)a.rows() != rho_in.dim() || rho_in.dim() != rho_fin.dim()) {
        throw DimensionMismatch("observable and states must act on the same space");
    }
}

double overlap_or_throw(const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    double overlap = (rho_in.mat() * rho_fin.mat()).trace().real();
    if (std::abs(overlap) <= kZeroOverlapTolerance) {
        throw OrthogonalPrePostSelection(
            "Tr[rho_in rho_fin] = 0: the pre- and post-selected states are orthogonal, so the weak value is undefined");
    }
    return overlap;
}

}  // namespace

WeakValue weak_value(const ComplexMatrix &a, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    require_same_dim(a, rho_in, rho_fin);
    double overlap = overlap_or_throw(rho_in, rho_fin);
    complex num = (rho_fin.mat() * a * rho_in.mat()).trace();
    return {num / overlap, overlap, !is_hermitian(a)};
}

complex weak_value(const ComplexMatrix &a, const ComplexVector &psi_in, const ComplexVector &psi_fin) {
    complex denom = psi_fin.dot(psi_in);
    if (std::abs(denom) <= kZeroOverlapTolerance) {
        throw OrthogonalPrePostSelection("<psi_fin|psi_in> = 0: weak value undefined");
    }
    return psi_fin.dot(a * psi_in) / denom;
}

WvMeasure wv_measure(const Povm &povm, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    if (povm.dim() != rho_in.dim() || rho_in.dim() != rho_fin.dim()) {
        throw DimensionMismatch("wv_measure: POVM and states must act on the same space");
    }
    ComplexMatrix prod = rho_in.mat() * rho_fin.mat();
    WvMeasure q{{}, 0.0};
    q.values.reserve(povm.size());
    for (const auto &p : povm.elements()) {
        complex v = (p * prod).trace();
        q.values.push_back(v);
        q.normalization += v;
    }
    return q;
}

WeakValue wv_from_measure(const UnbiasedObservable &obs, const WvMeasure &q) {
    if (q.values.size() != obs.values().size()) {
        throw DimensionMismatch("wv_from_measure: measure and observable have different outcome counts");
    }
    if (std::abs(q.normalization) <= kZeroOverlapTolerance) {
        throw OrthogonalPrePostSelection("WV measure has zero normalization: weak value undefined");
    }
    complex ex = 0;
    for (size_t j = 0; j < q.values.size(); j++) {
        ex += obs.values()[j] * q.values[j];
    }
    return {ex / q.normalization, q.normalization.real(), false};
}

complex double_weak_value(
    const ComplexMatrix &a, const ComplexMatrix &b, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    require_same_dim(a, rho_in, rho_fin);
    require_same_dim(b, rho_in, rho_fin);
    double overlap = overlap_or_throw(rho_in, rho_fin);
    return (a * rho_in.mat() * b * rho_fin.mat()).trace() / overlap;
}

complex CorrelationDecomposition::resum() const {
    complex total = 0;
    for (const auto &t : terms) {
        if (t.term) {
            total += t.weight * *t.term;
        }
    }
    return total;
}

CorrelationDecomposition dwv_correlation_decomposition(
    const DensityMatrix &rho_in, const DensityMatrix &rho_fin, const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, rho_in, rho_fin);
    require_same_dim(b, rho_in, rho_fin);
    overlap_or_throw(rho_in, rho_fin);

    constexpr double kDropEigenvalue = 1e-12;
    auto support = [&](const DensityMatrix &rho, std::vector<double> &r, std::vector<ComplexVector> &vecs) {
        HermitianEigen eig = hermitian_eigen(rho.mat());
        for (Eigen::Index k = eig.values.size(); k-- > 0;) {
            if (eig.values(k) > kDropEigenvalue) {
                r.push_back(eig.values(k));
                vecs.push_back(eig.vectors.col(k));
            }
        }
    };

    CorrelationDecomposition out;
    std::vector<ComplexVector> psi, psi_p;
    support(rho_in, out.r_in, psi);
    support(rho_fin, out.r_fin, psi_p);

    double norm = 0;
    for (size_t m = 0; m < psi.size(); m++) {
        for (size_t n = 0; n < psi_p.size(); n++) {
            complex amp = psi_p[n].dot(psi[m]);  // <psi'_n|psi_m>
            double w = out.r_in[m] * out.r_fin[n] * std::norm(amp);
            std::optional<complex> term;
            if (std::norm(amp) > kZeroOverlapTolerance) {
                complex forward = psi_p[n].dot(a * psi[m]) / amp;
                complex backward = psi[m].dot(b * psi_p[n]) / std::conj(amp);
                term = forward * backward;
            } else {
                w = 0;
            }
            out.terms.push_back({m, n, w, term});
            norm += w;
        }
    }
    for (auto &t : out.terms) {
        t.weight /= norm;
    }
    return out;
}

}  // namespace wvkit
