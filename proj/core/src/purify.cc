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

#include "wvkit/purify.h"

#include <cmath>

#include "wvkit/analytics.h"
#include "wvkit/errors.h"

namespace wvkit {

namespace {

struct Spectrum {
    std::vector<double> r;
    std::vector<ComplexVector> vecs;
};

Spectrum spectrum(const DensityMatrix &rho) {
    HermitianEigen eig = hermitian_eigen(rho.mat());
    Spectrum s;
    for (Eigen::Index k = 0; k < eig.values.size(); k++) {
        s.r.push_back(std::max(0.0, eig.values(k)));
        s.vecs.push_back(eig.vectors.col(k));
    }
    return s;
}

double checked_overlap(const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    if (rho_in.dim() != rho_fin.dim()) {
        throw DimensionMismatch("purification: states differ in dimension");
    }
    double t = (rho_in.mat() * rho_fin.mat()).trace().real();
    if (t <= kZeroOverlapTolerance) {
        throw OrthogonalPrePostSelection("purification: Tr[rho_in rho_fin] = 0, the pre- and post-selection are orthogonal");
    }
    return t;
}

double overlap_of(const ComplexVector &a, const ComplexVector &b) {
    return std::norm(b.dot(a));
}

}  // namespace

ComplexVector purify_state(const DensityMatrix &rho) {
    Spectrum s = spectrum(rho);
    size_t d = rho.dim();
    ComplexVector out = ComplexVector::Zero(d * d);
    for (size_t m = 0; m < d; m++) {
        out += std::sqrt(s.r[m]) * kron(s.vecs[m], kets::basis(d, m));
    }
    return out;
}

PurifiedPair vaidman_purification(const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    double t = checked_overlap(rho_in, rho_fin);
    size_t d = rho_in.dim();
    Spectrum in = spectrum(rho_in), fin = spectrum(rho_fin);

    ComplexVector xi = max_entangled_unnorm(d) / std::sqrt((double)d);
    ComplexVector gamma = ComplexVector::Zero(d * d);
    for (size_t m = 0; m < d; m++) {
        for (size_t n = 0; n < d; n++) {
            gamma(m * d + n) = std::sqrt(in.r[m] * fin.r[n]) * fin.vecs[n].dot(in.vecs[m]) / std::sqrt(t);
        }
    }

    // Index ((s d + a1) d + a2) d + a3.
    size_t n4 = d * d * d * d;
    ComplexVector psi_in = ComplexVector::Zero(n4), psi_fin = ComplexVector::Zero(n4);
    for (size_t s = 0; s < d; s++) {
        for (size_t a1 = 0; a1 < d; a1++) {
            for (size_t a2 = 0; a2 < d; a2++) {
                for (size_t a3 = 0; a3 < d; a3++) {
                    size_t idx = ((s * d + a1) * d + a2) * d + a3;
                    psi_in(idx) = std::sqrt(in.r[a1]) * in.vecs[a1](s) * xi(a2 * d + a3);
                    psi_fin(idx) = std::sqrt(fin.r[a2]) * fin.vecs[a2](s) * gamma(a1 * d + a3);
                }
            }
        }
    }
    return {psi_in, psi_fin, {d, d, d, d}, overlap_of(psi_in, psi_fin)};
}

PurifiedPair double_purification(const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    checked_overlap(rho_in, rho_fin);
    size_t d = rho_in.dim();
    ComplexVector psi = purify_state(rho_in);  // index s * d + a
    ComplexVector phi = purify_state(rho_fin);

    // Index ((s1 d + s2) d + a1) d + a2.
    size_t n4 = d * d * d * d;
    ComplexVector g_in = ComplexVector::Zero(n4), g_fin = ComplexVector::Zero(n4);
    for (size_t s1 = 0; s1 < d; s1++) {
        for (size_t s2 = 0; s2 < d; s2++) {
            for (size_t a1 = 0; a1 < d; a1++) {
                for (size_t a2 = 0; a2 < d; a2++) {
                    size_t idx = ((s1 * d + s2) * d + a1) * d + a2;
                    g_in(idx) = psi(s1 * d + a1) * phi(s2 * d + a2);
                    g_fin(idx) = phi(s1 * d + a2) * psi(s2 * d + a1);
                }
            }
        }
    }
    return {g_in, g_fin, {d, d, d, d}, overlap_of(g_in, g_fin)};
}

ComplexMatrix embed_leading(const std::vector<ComplexMatrix> &ops, const std::vector<size_t> &register_dims) {
    if (ops.size() > register_dims.size()) {
        throw DimensionMismatch("embed_leading: more operators than registers");
    }
    ComplexMatrix out = identity(1);
    size_t rest = 1;
    for (size_t i = 0; i < register_dims.size(); i++) {
        if (i < ops.size()) {
            if (!is_square(ops[i]) || (size_t)ops[i].rows() != register_dims[i]) {
                throw DimensionMismatch("embed_leading: operator does not fit its register");
            }
            out = kron(out, ops[i]);
        } else {
            rest *= register_dims[i];
        }
    }
    return kron(out, identity(rest));
}

AvExtension av_extension(const std::vector<std::pair<ComplexVector, ComplexVector>> &terms) {
    TwoTimeVector lambda = TwoTimeVector::from_terms(terms);
    size_t d = lambda.L.rows();
    size_t n = terms.size();
    ComplexVector raw_in = ComplexVector::Zero(d * n), raw_fin = ComplexVector::Zero(d * n);
    for (size_t i = 0; i < n; i++) {
        raw_in += kron(terms[i].first, kets::basis(n, i));
        raw_fin += kron(terms[i].second, kets::basis(n, i));
    }
    if (raw_in.norm() == 0 || raw_fin.norm() == 0) {
        throw InvalidArgument("av_extension: extended vectors vanish");
    }
    ComplexVector psi_in = raw_in.normalized(), psi_fin = raw_fin.normalized();

    AvExtension out{{psi_in, psi_fin, {d, n}, overlap_of(psi_in, psi_fin)}, raw_in, raw_fin, lambda, std::nullopt};
    if (out.pair.overlap > kZeroOverlapTolerance) {
        DensityMatrix rho = DensityMatrix::product(DensityMatrix::pure(psi_in), DensityMatrix::pure(ComplexVector(psi_fin.conjugate())));
        out.state = normalized_from_density(rho);
    }
    return out;
}

complex AvExtension::extended_functional(const ComplexMatrix &x) const {
    if ((size_t)x.rows() != (size_t)raw_in.size() || !is_square(x)) {
        throw DimensionMismatch("extended_functional: operator does not act on system (x) auxiliary");
    }
    return raw_fin.dot(x * raw_in);
}

complex AvExtension::normalized_functional(const ComplexMatrix &a) const {
    complex norm = eval_vector(lambda, identity(lambda.L.rows()));
    if (std::abs(norm) <= kZeroOverlapTolerance) {
        throw OrthogonalPrePostSelection("lambda(I) = 0: the normalized functional is undefined");
    }
    return eval_vector(lambda, a) / norm;
}

complex AvExtension::normalized_pair_functional(const ComplexMatrix &a, const ComplexMatrix &b) const {
    ComplexMatrix id = identity(lambda.L.rows());
    complex li = eval_vector(lambda, id);
    if (std::abs(li) <= kZeroOverlapTolerance) {
        throw OrthogonalPrePostSelection("lambda(I) = 0: the normalized functional is undefined");
    }
    complex e_ab = eval_vector(lambda, a) * std::conj(eval_vector(lambda, b.adjoint()));
    return e_ab / std::norm(li);
}

complex AvExtension::state_value(const ComplexMatrix &a, const ComplexMatrix &b) const {
    if (!state) {
        throw OrthogonalPrePostSelection("lambda(I) = 0: no normalized two-time state");
    }
    return eval_state(*state, embed_leading({a}, pair.register_dims), embed_leading({b}, pair.register_dims));
}

}  // namespace wvkit
