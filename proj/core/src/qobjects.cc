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

#include "wvkit/qobjects.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wvkit/errors.h"

namespace wvkit {

namespace {

using Predicate = InvalidQuantumObject::Predicate;

std::string fmt_double(double x) {
    std::ostringstream ss;
    ss.precision(6);
    ss << x;
    return ss.str();
}

}  // namespace

DensityMatrix DensityMatrix::make(const ComplexMatrix &mat, std::vector<size_t> dims, const ValidationTolerance &tol) {
    if (!is_square(mat) || mat.rows() == 0) {
        throw InvalidQuantumObject(Predicate::kNotSquare, "density matrix must be square and non-empty");
    }
    size_t d = mat.rows();
    if (dims.empty()) {
        dims = {d};
    }
    size_t prod = std::accumulate(dims.begin(), dims.end(), size_t{1}, std::multiplies<>());
    if (prod != d) {
        throw DimensionMismatch("density matrix dimension does not match its factor dimensions");
    }
    double herm_dev = max_abs_diff(mat, mat.adjoint());
    if (herm_dev > tol.hermitian) {
        throw InvalidQuantumObject(
            Predicate::kNotHermitian, "density matrix is not Hermitian (deviation " + fmt_double(herm_dev) + ")");
    }
    ComplexMatrix h = (mat + mat.adjoint()) / 2.0;
    double tr = h.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw InvalidQuantumObject(Predicate::kTraceNotOne, "density matrix trace is " + fmt_double(tr) + ", not 1");
    }
    HermitianEigen eig = hermitian_eigen(h);
    double lowest = eig.values(0);
    if (lowest < -tol.positivity) {
        throw InvalidQuantumObject(
            Predicate::kNegativeEigenvalue, "density matrix has eigenvalue " + fmt_double(lowest) + " < 0");
    }
    if (lowest < 0) {
        Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
        clipped /= clipped.sum();
        h = eig.vectors * clipped.cast<complex>().asDiagonal() * eig.vectors.adjoint();
    }
    return DensityMatrix(std::move(h), std::move(dims));
}

DensityMatrix DensityMatrix::pure(const ComplexVector &ket, std::vector<size_t> dims) {
    return make(projector(kets::normalized(ket)), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(size_t d) {
    return make(identity(d) / (double)d);
}

DensityMatrix DensityMatrix::product(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix(kron(a.mat(), b.mat()), std::move(dims));
}

double DensityMatrix::purity() const {
    return (mat_ * mat_).trace().real();
}

DensityMatrix DensityMatrix::transpose() const {
    return DensityMatrix(mat_.transpose(), dims_);
}

Povm Povm::make(std::vector<ComplexMatrix> elements, const ValidationTolerance &tol) {
    if (elements.empty()) {
        throw InvalidQuantumObject(Predicate::kEmpty, "POVM has no elements");
    }
    size_t d = elements.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (size_t j = 0; j < elements.size(); j++) {
        const auto &e = elements[j];
        if (!is_square(e) || (size_t)e.rows() != d) {
            throw InvalidQuantumObject(Predicate::kNotSquare, "POVM element " + std::to_string(j) + " has wrong shape");
        }
        if (!is_hermitian(e, tol.hermitian)) {
            throw InvalidQuantumObject(Predicate::kNotHermitian, "POVM element " + std::to_string(j) + " not Hermitian");
        }
        double lowest = min_eigenvalue(e);
        if (lowest < -tol.positivity) {
            throw InvalidQuantumObject(
                Predicate::kNegativeEigenvalue,
                "POVM element " + std::to_string(j) + " has eigenvalue " + fmt_double(lowest));
        }
        sum += e;
    }
    double dev = max_abs_diff(sum, identity(d));
    if (dev > tol.completeness) {
        throw InvalidQuantumObject(
            Predicate::kNotComplete, "POVM elements sum to identity only up to " + fmt_double(dev));
    }
    for (auto &e : elements) {
        e = (e + e.adjoint()).eval() / 2.0;
    }
    return Povm(std::move(elements));
}

Povm Povm::computational(size_t d) {
    std::vector<ComplexMatrix> elements;
    for (size_t i = 0; i < d; i++) {
        elements.push_back(projector(kets::basis(d, i)));
    }
    return Povm(std::move(elements));
}

Povm Povm::trivial(size_t d) {
    return Povm({identity(d)});
}

Povm Povm::product(const Povm &a, const Povm &b) {
    std::vector<ComplexMatrix> elements;
    elements.reserve(a.size() * b.size());
    for (const auto &p : a.elements()) {
        for (const auto &q : b.elements()) {
            elements.push_back(kron(p, q));
        }
    }
    return Povm(std::move(elements));
}

UnbiasedObservable::UnbiasedObservable(Povm povm, std::vector<double> values, ComplexMatrix observable)
    : povm_(std::move(povm)), values_(std::move(values)), observable_(std::move(observable)), x_max_(0) {
    if (values_.size() != povm_.size()) {
        throw InvalidArgument(
            "observable has " + std::to_string(values_.size()) + " values for " + std::to_string(povm_.size()) +
            " POVM outcomes");
    }
    if ((size_t)observable_.rows() != povm_.dim() || !is_square(observable_)) {
        throw DimensionMismatch("observable dimension does not match POVM");
    }
    for (double x : values_) {
        x_max_ = std::max(x_max_, std::abs(x));
    }
}

UnbiasedObservable UnbiasedObservable::fit(Povm povm, std::vector<double> values) {
    if (values.size() != povm.size()) {
        throw InvalidArgument("fit: one value per POVM outcome required");
    }
    ComplexMatrix a = ComplexMatrix::Zero(povm.dim(), povm.dim());
    for (size_t j = 0; j < povm.size(); j++) {
        a += values[j] * povm[j];
    }
    return UnbiasedObservable(std::move(povm), std::move(values), std::move(a));
}

UnbiasedObservable UnbiasedObservable::claim(Povm povm, std::vector<double> values, ComplexMatrix observable) {
    return UnbiasedObservable(std::move(povm), std::move(values), std::move(observable));
}

std::vector<SpectralTerm> spectral_decompose(const ComplexMatrix &a, double merge_tol, double hermitian_tol) {
    if (!is_hermitian(a, hermitian_tol)) {
        throw InvalidArgument("spectral_decompose: matrix is not Hermitian");
    }
    HermitianEigen eig = hermitian_eigen(a);
    size_t d = a.rows();
    std::vector<SpectralTerm> terms;
    // Walk eigenvalues from largest to smallest, chaining near-equal neighbours.
    size_t group_size = 0;
    double group_sum = 0;
    for (size_t k = d; k-- > 0;) {
        double v = eig.values(k);
        ComplexVector vec = eig.vectors.col(k);
        if (!terms.empty() && std::abs(v - eig.values(k + 1)) <= merge_tol) {
            terms.back().projector += projector(vec);
            group_sum += v;
            group_size++;
            terms.back().value = group_sum / group_size;
        } else {
            terms.push_back({v, projector(vec)});
            group_sum = v;
            group_size = 1;
        }
    }
    return terms;
}

UnbiasedObservable noisy_measurement(const ComplexMatrix &a, double p, const std::vector<double> &lambda) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw InvalidArgument("noisy_measurement: noise p must lie in [0, 1)");
    }
    auto terms = spectral_decompose(a);
    size_t n = terms.size();
    if (lambda.size() != n) {
        throw InvalidArgument(
            "noisy_measurement: lambda has " + std::to_string(lambda.size()) + " entries but the observable has " +
            std::to_string(n) + " distinct eigenvalues");
    }
    double total = 0;
    for (double l : lambda) {
        if (l < 0) {
            throw InvalidArgument("noisy_measurement: lambda entries must be nonnegative");
        }
        total += l;
    }
    if (std::abs(total - 1.0) > kDefaultTolerance) {
        throw InvalidArgument("noisy_measurement: lambda must sum to 1");
    }

    double abar = 0;
    for (size_t j = 0; j < n; j++) {
        abar += lambda[j] * terms[j].value;
    }
    size_t d = a.rows();
    std::vector<ComplexMatrix> elements;
    std::vector<double> values;
    for (size_t j = 0; j < n; j++) {
        elements.push_back((1 - p) * terms[j].projector + p * lambda[j] * identity(d));
        values.push_back((terms[j].value - p * abar) / (1 - p));
    }
    ComplexMatrix h = (a + a.adjoint()) / 2.0;
    return UnbiasedObservable::claim(Povm::make(std::move(elements)), std::move(values), std::move(h));
}

UnbiasedObservable noisy_measurement(const ComplexMatrix &a, double p) {
    size_t n = spectral_decompose(a).size();
    return noisy_measurement(a, p, std::vector<double>(n, 1.0 / (double)n));
}

UnbiasedObservable projective_measurement(const ComplexMatrix &a) {
    return noisy_measurement(a, 0.0);
}

UnbiasednessCheck check_unbiased(const UnbiasedObservable &obs, double tol) {
    size_t d = obs.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (size_t j = 0; j < obs.povm().size(); j++) {
        sum += obs.values()[j] * obs.povm()[j];
    }
    double dev = max_abs_diff(sum, obs.observable());
    return {dev <= tol, dev};
}

}  // namespace wvkit
