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

#include "wvkit/random_objects.h"

#include <cmath>

#include <Eigen/QR>

namespace wvkit {

ComplexMatrix random_ginibre(size_t rows, size_t cols, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (size_t i = 0; i < rows; i++) {
        for (size_t j = 0; j < cols; j++) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = complex(re, im);
        }
    }
    return g;
}

ComplexVector random_ket(size_t d, Rng &rng) {
    ComplexVector v = random_ginibre(d, 1, rng).col(0);
    return v.normalized();
}

ComplexMatrix random_unitary(size_t d, Rng &rng) {
    Eigen::HouseholderQR<ComplexMatrix> qr(random_ginibre(d, d, rng));
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (size_t j = 0; j < d; j++) {
        complex diag = r(j, j);
        if (std::abs(diag) > 0) {
            q.col(j) *= diag / std::abs(diag);
        }
    }
    return q;
}

ComplexMatrix random_hermitian(size_t d, Rng &rng) {
    ComplexMatrix g = random_ginibre(d, d, rng);
    return g + g.adjoint();
}

ComplexMatrix random_positive(size_t d, Rng &rng, size_t rank) {
    ComplexMatrix g = random_ginibre(d, rank == 0 ? d : rank, rng);
    return g * g.adjoint();
}

DensityMatrix random_density(size_t d, Rng &rng, size_t rank) {
    ComplexMatrix p = random_positive(d, rng, rank);
    return DensityMatrix::make(p / p.trace().real());
}

Povm random_povm(size_t d, size_t n, Rng &rng) {
    std::vector<ComplexMatrix> g;
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (size_t j = 0; j < n; j++) {
        g.push_back(random_positive(d, rng));
        s += g.back();
    }
    HermitianEigen eig = hermitian_eigen(s);
    Eigen::VectorXd inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
    ComplexMatrix s_inv_sqrt = eig.vectors * inv_sqrt.cast<complex>().asDiagonal() * eig.vectors.adjoint();
    for (auto &e : g) {
        e = s_inv_sqrt * e * s_inv_sqrt;
        e = (e + e.adjoint()) / 2.0;
    }
    return Povm::make(std::move(g));
}

UnbiasedObservable random_unbiased_observable(size_t d, size_t n, Rng &rng) {
    Povm povm = random_povm(d, n, rng);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::vector<double> x;
    for (size_t j = 0; j < n; j++) {
        x.push_back(value(rng));
    }
    return UnbiasedObservable::fit(std::move(povm), std::move(x));
}

DensityMatrix random_ppt_invariant(size_t d, size_t terms, Rng &rng) {
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix rho = ComplexMatrix::Zero(d * d, d * d);
    double total = 0;
    for (size_t i = 0; i < terms; i++) {
        double p = weight(rng);
        Eigen::MatrixXd g(d, d);
        for (size_t r = 0; r < d; r++) {
            for (size_t c = 0; c < d; c++) {
                g(r, c) = normal(rng);
            }
        }
        Eigen::MatrixXd tau = g * g.transpose();
        tau /= tau.trace();
        rho += p * kron(random_density(d, rng).mat(), ComplexMatrix(tau.cast<complex>()));
        total += p;
    }
    return DensityMatrix::make(rho / total, {d, d});
}

}  // namespace wvkit
