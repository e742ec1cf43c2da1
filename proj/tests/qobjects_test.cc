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

#include "gtest/gtest.h"
#include "test_util.h"
#include "wvkit/errors.h"
#include "wvkit/random_objects.h"

namespace wvkit {
namespace {

using Predicate = InvalidQuantumObject::Predicate;

Predicate rejection(const ComplexMatrix &m) {
    try {
        DensityMatrix::make(m);
    } catch (const InvalidQuantumObject &e) {
        return e.predicate();
    }
    ADD_FAILURE() << "matrix was accepted";
    return Predicate::kEmpty;
}

TEST(DensityMatrix, AcceptsMaximallyMixed) {
    EXPECT_NO_THROW(DensityMatrix::make(identity(2) / 2.0));
    EXPECT_NEAR(DensityMatrix::maximally_mixed(3).purity(), 1.0 / 3, 1e-15);
}

TEST(DensityMatrix, RejectsNamedPredicates) {
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_EQ(rejection(neg), Predicate::kNegativeEigenvalue);
    EXPECT_EQ(rejection(identity(2)), Predicate::kTraceNotOne);
    ComplexMatrix skew = identity(2) / 2.0;
    skew(0, 1) = 0.3;
    EXPECT_EQ(rejection(skew), Predicate::kNotHermitian);
    EXPECT_EQ(rejection(ComplexMatrix::Zero(2, 3)), Predicate::kNotSquare);
}

TEST(DensityMatrix, PureStatePurity) {
    DensityMatrix rho = DensityMatrix::make(projector(kets::plus()));
    EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
}

TEST(DensityMatrix, ClipsTinyNegativeEigenvalues) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0 + 1e-11;
    m(1, 1) = -1e-11;
    DensityMatrix rho = DensityMatrix::make(m);
    EXPECT_GE(min_eigenvalue(rho.mat()), 0.0);
    EXPECT_NEAR(rho.mat().trace().real(), 1.0, 1e-12);
}

TEST(DensityMatrix, ProductCarriesFactorDimensions) {
    DensityMatrix rho = DensityMatrix::product(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3));
    EXPECT_EQ(rho.dims(), (std::vector<size_t>{2, 3}));
    EXPECT_EQ(rho.dim(), 6u);
    EXPECT_THROW(DensityMatrix::make(identity(4) / 4.0, {2, 3}), DimensionMismatch);
}

TEST(DensityMatrix, RandomStatesAreValid) {
    Rng rng(20);
    for (size_t d : {2, 3, 4}) {
        for (size_t rank = 1; rank <= d; rank++) {
            ComplexMatrix m = random_density(d, rng, rank).mat();
            EXPECT_NO_THROW(DensityMatrix::make(m));
        }
    }
}

TEST(Povm, RejectsIncomplete) {
    try {
        Povm::make({projector(kets::zero())});
        FAIL();
    } catch (const InvalidQuantumObject &e) {
        EXPECT_EQ(e.predicate(), Predicate::kNotComplete);
    }
    EXPECT_THROW(Povm::make({}), InvalidQuantumObject);
    EXPECT_THROW(Povm::make({pauli::Z(), identity(2) - pauli::Z()}), InvalidQuantumObject);
}

TEST(Povm, ConstructedPovmsSumToIdentity) {
    Rng rng(21);
    for (size_t d : {2, 3, 4}) {
        for (size_t n : {1, 2, 5}) {
            Povm p = random_povm(d, n, rng);
            ComplexMatrix sum = ComplexMatrix::Zero(d, d);
            for (const auto &e : p.elements()) {
                sum += e;
            }
            EXPECT_MATRIX_NEAR(sum, identity(d), 1e-10);
        }
    }
    Povm prod = Povm::product(Povm::computational(2), Povm::computational(3));
    EXPECT_EQ(prod.size(), 6u);
    EXPECT_MATRIX_NEAR(prod[4], kron(projector(kets::one()), projector(kets::basis(3, 1))), 0.0);
}

TEST(SpectralDecompose, PauliZ) {
    auto terms = spectral_decompose(pauli::Z());
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_NEAR(terms[0].value, 1.0, 1e-15);
    EXPECT_MATRIX_NEAR(terms[0].projector, projector(kets::zero()), 1e-14);
    EXPECT_NEAR(terms[1].value, -1.0, 1e-15);
    EXPECT_MATRIX_NEAR(terms[1].projector, projector(kets::one()), 1e-14);
}

TEST(SpectralDecompose, DegenerateIdentity) {
    auto terms = spectral_decompose(identity(2));
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_NEAR(terms[0].value, 1.0, 1e-15);
    EXPECT_MATRIX_NEAR(terms[0].projector, identity(2), 1e-14);
}

TEST(SpectralDecompose, PauliXMatchesHandDiagonalization) {
    auto terms = spectral_decompose(pauli::X());
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_MATRIX_NEAR(terms[0].projector, projector(kets::plus()), 1e-14);
    EXPECT_MATRIX_NEAR(terms[1].projector, projector(kets::minus()), 1e-14);
}

TEST(SpectralDecompose, ResolvesRandomHermitian) {
    Rng rng(22);
    ComplexMatrix a = random_hermitian(4, rng);
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4), rebuilt = ComplexMatrix::Zero(4, 4);
    for (const auto &t : spectral_decompose(a)) {
        sum += t.projector;
        rebuilt += t.value * t.projector;
    }
    EXPECT_MATRIX_NEAR(sum, identity(4), 1e-12);
    EXPECT_MATRIX_NEAR(rebuilt, a, 1e-12);
    EXPECT_THROW(spectral_decompose(pauli::X() * pauli::Y()), InvalidArgument);
}

TEST(NoisyMeasurement, NoiselessLimitIsProjective) {
    UnbiasedObservable obs = noisy_measurement(pauli::Z(), 0.0);
    EXPECT_EQ(obs.values(), (std::vector<double>{1.0, -1.0}));
    EXPECT_MATRIX_NEAR(obs.povm()[0], projector(kets::zero()), 1e-14);
}

TEST(NoisyMeasurement, HalfNoiseValues) {
    UnbiasedObservable obs = noisy_measurement(pauli::Z(), 0.5, {0.5, 0.5});
    EXPECT_NEAR(obs.values()[0], 2.0, 1e-14);
    EXPECT_NEAR(obs.values()[1], -2.0, 1e-14);
    EXPECT_NEAR(obs.x_max(), 2.0, 1e-14);
    EXPECT_MATRIX_NEAR(obs.povm()[0], 0.5 * projector(kets::zero()) + 0.25 * identity(2), 1e-14);
}

TEST(NoisyMeasurement, SingleEigenvalue) {
    UnbiasedObservable obs = noisy_measurement(identity(2), 0.7);
    ASSERT_EQ(obs.values().size(), 1u);
    EXPECT_NEAR(obs.values()[0], 1.0, 1e-14);
    EXPECT_MATRIX_NEAR(obs.povm()[0], identity(2), 1e-14);
}

TEST(NoisyMeasurement, RejectsBadArguments) {
    EXPECT_THROW(noisy_measurement(pauli::Z(), 1.0), InvalidArgument);
    EXPECT_THROW(noisy_measurement(pauli::Z(), 0.2, {1.0}), InvalidArgument);
    EXPECT_THROW(noisy_measurement(pauli::Z(), 0.2, {0.7, 0.7}), InvalidArgument);
}

TEST(NoisyMeasurement, AlwaysUnbiasedOnRandomInputs) {
    Rng rng(23);
    std::uniform_real_distribution<double> u(0.0, 0.95);
    for (int t = 0; t < 50; t++) {
        size_t d = 2 + t % 3;
        ComplexMatrix a = random_hermitian(d, rng);
        std::vector<double> lambda(d);
        double s = 0;
        for (auto &l : lambda) {
            s += (l = u(rng) + 0.01);
        }
        for (auto &l : lambda) {
            l /= s;
        }
        UnbiasedObservable obs = noisy_measurement(a, u(rng), lambda);
        UnbiasednessCheck check = check_unbiased(obs);
        EXPECT_TRUE(check.ok) << check.max_deviation;
        EXPECT_MATRIX_NEAR(obs.observable(), a, 1e-10);
    }
}

TEST(NoisyMeasurement, ConvergesToProjectiveAsNoiseVanishes) {
    UnbiasedObservable exact = projective_measurement(pauli::X());
    double previous = 1.0;
    for (double p : {1e-1, 1e-2, 1e-3, 1e-4}) {
        UnbiasedObservable noisy = noisy_measurement(pauli::X(), p);
        double diff = 0;
        for (size_t j = 0; j < 2; j++) {
            diff = std::max(diff, max_abs_diff(noisy.povm()[j], exact.povm()[j]));
        }
        EXPECT_LT(diff, previous);
        previous = diff;
    }
    EXPECT_LT(previous, 1e-3);
}

TEST(CheckUnbiased, FlagsWrongValues) {
    UnbiasedObservable bad = UnbiasedObservable::claim(Povm::computational(2), {1.0, 1.0}, pauli::Z());
    UnbiasednessCheck check = check_unbiased(bad);
    EXPECT_FALSE(check.ok);
    EXPECT_NEAR(check.max_deviation, 2.0, 1e-14);
}

TEST(CheckUnbiased, TetrahedralPovmForX) {
    // Four-outcome qubit POVM (I + n_k . sigma) / 4 with tetrahedral n_k.
    const double s = 1 / std::sqrt(3.0);
    const double n[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    std::vector<ComplexMatrix> elements;
    for (const auto &v : n) {
        elements.push_back((identity(2) + v[0] * pauli::X() + v[1] * pauli::Y() + v[2] * pauli::Z()) / 4.0);
    }
    // Tr[P_k X] = n_k^x / 2, and sum_k x_k P_k = X is solved by x_k = 3 n_k^x.
    std::vector<double> x;
    for (const auto &v : n) {
        x.push_back(3 * v[0]);
    }
    UnbiasedObservable obs = UnbiasedObservable::claim(Povm::make(elements), x, pauli::X());
    EXPECT_TRUE(check_unbiased(obs).ok);
    EXPECT_NEAR(obs.x_max(), std::sqrt(3.0), 1e-14);
}

TEST(UnbiasedObservable, FitDefinesObservable) {
    Rng rng(24);
    UnbiasedObservable obs = random_unbiased_observable(3, 5, rng);
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    for (size_t j = 0; j < obs.povm().size(); j++) {
        sum += obs.values()[j] * obs.povm()[j];
    }
    EXPECT_MATRIX_NEAR(sum, obs.observable(), 1e-14);
    EXPECT_TRUE(is_hermitian(obs.observable()));
    EXPECT_THROW(UnbiasedObservable::fit(Povm::computational(2), {1.0}), InvalidArgument);
}

}  // namespace
}  // namespace wvkit
