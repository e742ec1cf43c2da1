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

#include "wvkit/qmath.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wvkit/errors.h"

namespace wvkit {

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (const auto &f : factors) {
        out = kron(out, f);
    }
    return out;
}

ComplexMatrix identity(size_t d) {
    return ComplexMatrix::Identity(d, d);
}

ComplexMatrix swap_operator(size_t d) {
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            s(j * d + i, i * d + j) = 1.0;
        }
    }
    return s;
}

ComplexMatrix partial_transpose_2(const ComplexMatrix &m, size_t dA, size_t dB) {
    size_t n = dA * dB;
    if ((size_t)m.rows() != n || (size_t)m.cols() != n) {
        throw DimensionMismatch(
            "partial_transpose_2: expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    ComplexMatrix out(n, n);
    for (size_t i = 0; i < dA; i++) {
        for (size_t j = 0; j < dB; j++) {
            for (size_t k = 0; k < dA; k++) {
                for (size_t l = 0; l < dB; l++) {
                    out(i * dB + l, k * dB + j) = m(i * dB + j, k * dB + l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const size_t> dims, std::span<const size_t> keep) {
    size_t total = std::accumulate(dims.begin(), dims.end(), size_t{1}, std::multiplies<>());
    if ((size_t)m.rows() != total || (size_t)m.cols() != total) {
        throw DimensionMismatch("partial_trace: matrix does not match register dimensions");
    }
    size_t n = dims.size();
    std::vector<bool> kept(n, false);
    for (size_t k : keep) {
        if (k >= n) {
            throw InvalidArgument("partial_trace: register index out of range");
        }
        kept[k] = true;
    }
    size_t kept_dim = 1;
    for (size_t k = 0; k < n; k++) {
        if (kept[k]) {
            kept_dim *= dims[k];
        }
    }

    // Splits a flat index into (kept part, traced part).
    auto split = [&](size_t index, size_t &kept_index, size_t &traced_index) {
        std::vector<size_t> digits(n);
        for (size_t k = n; k-- > 0;) {
            digits[k] = index % dims[k];
            index /= dims[k];
        }
        kept_index = 0;
        traced_index = 0;
        for (size_t k = 0; k < n; k++) {
            if (kept[k]) {
                kept_index = kept_index * dims[k] + digits[k];
            } else {
                traced_index = traced_index * dims[k] + digits[k];
            }
        }
    };

    std::vector<size_t> kept_of(total), traced_of(total);
    for (size_t r = 0; r < total; r++) {
        split(r, kept_of[r], traced_of[r]);
    }
    ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
    for (size_t r = 0; r < total; r++) {
        for (size_t c = 0; c < total; c++) {
            if (traced_of[r] == traced_of[c]) {
                out(kept_of[r], kept_of[c]) += m(r, c);
            }
        }
    }
    return out;
}

ComplexVector double_ket(const ComplexMatrix &a) {
    if (!is_square(a)) {
        throw DimensionMismatch("double_ket: operator must be square");
    }
    size_t d = a.rows();
    ComplexVector v(d * d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            v(i * d + j) = a(i, j);
        }
    }
    return v;
}

ComplexMatrix from_double_ket(const ComplexVector &v) {
    size_t d = factor_dimension(v.size());
    ComplexMatrix a(d, d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            a(i, j) = v(i * d + j);
        }
    }
    return a;
}

ComplexVector max_entangled_unnorm(size_t d) {
    return double_ket(identity(d));
}

ComplexMatrix outer(const ComplexVector &ket, const ComplexVector &bra) {
    return ket * bra.adjoint();
}

ComplexMatrix projector(const ComplexVector &ket) {
    return ket * ket.adjoint();
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

bool is_square(const ComplexMatrix &m) {
    return m.rows() == m.cols();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return is_square(m) && max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    return is_square(m) && max_abs_diff(m.adjoint() * m, identity(m.rows())) <= tol;
}

HermitianEigen hermitian_eigen(const ComplexMatrix &m) {
    if (!is_square(m)) {
        throw DimensionMismatch("hermitian_eigen: matrix must be square");
    }
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

bool is_positive_semidefinite(const ComplexMatrix &m, double tol) {
    return is_hermitian(m, std::max(tol, kDefaultTolerance)) && min_eigenvalue(m) >= -tol;
}

size_t factor_dimension(size_t n) {
    auto d = (size_t)std::llround(std::sqrt((double)n));
    if (d * d != n) {
        throw DimensionMismatch("expected a bipartite dimension d^2, got " + std::to_string(n));
    }
    return d;
}

namespace pauli {

ComplexMatrix I() {
    return identity(2);
}

ComplexMatrix X() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix Y() {
    ComplexMatrix m(2, 2);
    m << 0, complex(0, -1), complex(0, 1), 0;
    return m;
}

ComplexMatrix Z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix from_string(std::string_view name) {
    if (name.empty()) {
        throw InvalidArgument("pauli::from_string: empty name");
    }
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (char c : name) {
        switch (c) {
            case 'I':
                out = kron(out, I());
                break;
            case 'X':
                out = kron(out, X());
                break;
            case 'Y':
                out = kron(out, Y());
                break;
            case 'Z':
                out = kron(out, Z());
                break;
            default:
                throw InvalidArgument(std::string("pauli::from_string: unknown Pauli '") + c + "'");
        }
    }
    return out;
}

}  // namespace pauli

namespace kets {

ComplexVector basis(size_t d, size_t i) {
    if (i >= d) {
        throw InvalidArgument("kets::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(d);
    v(i) = 1.0;
    return v;
}

ComplexVector zero() {
    return basis(2, 0);
}

ComplexVector one() {
    return basis(2, 1);
}

ComplexVector plus() {
    ComplexVector v(2);
    v << 1, 1;
    return v / std::sqrt(2.0);
}

ComplexVector minus() {
    ComplexVector v(2);
    v << 1, -1;
    return v / std::sqrt(2.0);
}

ComplexVector plus_i() {
    ComplexVector v(2);
    v << 1, complex(0, 1);
    return v / std::sqrt(2.0);
}

ComplexVector minus_i() {
    ComplexVector v(2);
    v << 1, complex(0, -1);
    return v / std::sqrt(2.0);
}

ComplexVector normalized(const ComplexVector &v) {
    double n = v.norm();
    if (n == 0.0) {
        throw InvalidArgument("kets::normalized: zero vector");
    }
    return v / n;
}

}  // namespace kets

const char *predicate_name(InvalidQuantumObject::Predicate predicate) {
    switch (predicate) {
        case InvalidQuantumObject::Predicate::kNotSquare:
            return "not_square";
        case InvalidQuantumObject::Predicate::kNotHermitian:
            return "not_hermitian";
        case InvalidQuantumObject::Predicate::kNegativeEigenvalue:
            return "negative_eigenvalue";
        case InvalidQuantumObject::Predicate::kTraceNotOne:
            return "trace_not_one";
        case InvalidQuantumObject::Predicate::kNotComplete:
            return "elements_do_not_sum_to_identity";
        case InvalidQuantumObject::Predicate::kEmpty:
            return "empty";
    }
    return "unknown";
}

}  // namespace wvkit
