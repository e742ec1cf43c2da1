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

#include "gtest/gtest.h"
#include "test_util.h"
#include "wvkit/analytics.h"
#include "wvkit/errors.h"
#include "wvkit/random_objects.h"

namespace wvkit {
namespace {

/// Tr[P^{T2} SWAP (A (x) B)] with every step done by index loops.
complex omega_oracle(const ComplexMatrix &p, const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t d = a.rows();
    ref::Dense pt = ref::zeros(d * d, d * d);
    for (size_t i = 0; i < d; i++)
        for (size_t j = 0; j < d; j++)
            for (size_t k = 0; k < d; k++)
                for (size_t l = 0; l < d; l++) pt[i * d + j][k * d + l] = p(i * d + l, k * d + j);
    ref::Dense ab = ref::kron(ref::from_eigen(a), ref::from_eigen(b));
    return ref::trace(ref::mul(pt, ref::mul(ref::swap(d), ab)));
}

ComplexMatrix kron_t(const ComplexMatrix &x, const ComplexMatrix &y) {
    return kron(x, ComplexMatrix(y.transpose()));
}

ComplexVector singlet() {
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = 1 / std::sqrt(2.0);
    v(2) = -1 / std::sqrt(2.0);
    return v;
}

TEST(TwoTimeVector, Evaluation) {
    TwoTimeVector l00 = TwoTimeVector::from_states(kets::zero(), kets::zero());
    EXPECT_COMPLEX_NEAR(eval_vector(l00, pauli::Z()), complex(1.0), 0.0);
    // L = |0><+| gives lambda(X) = <+|X|0>.
    TwoTimeVector l = TwoTimeVector::from_states(kets::zero(), kets::plus());
    EXPECT_COMPLEX_NEAR(eval_vector(l, pauli::X()), complex(1 / std::sqrt(2.0)), 1e-15);
    EXPECT_COMPLEX_NEAR(eval_vector(l, identity(2)), l.L.trace(), 0.0);
}

TEST(TwoTimeVector, FromTermsSumsPairs) {
    Rng rng(50);
    std::vector<std::pair<ComplexVector, ComplexVector>> terms;
    for (int i = 0; i < 3; i++) {
        terms.emplace_back(random_ket(3, rng), random_ket(3, rng));
    }
    ComplexMatrix a = random_ginibre(3, 3, rng);
    complex expected = 0;
    for (const auto &[psi, psi_p] : terms) {
        expected += ref::sandwich(psi_p, a, psi);
    }
    EXPECT_COMPLEX_NEAR(eval_vector(TwoTimeVector::from_terms(terms), a), expected, 1e-13);
    EXPECT_THROW(TwoTimeVector::from_terms({}), InvalidArgument);
}

TEST(AdjointFunctional, ConjugatesAndInvolutes) {
    TwoTimeVector herm{pauli::X()};
    EXPECT_MATRIX_NEAR(adjoint_functional(herm).L, pauli::X(), 0.0);
    TwoTimeVector l{outer(kets::zero(), kets::one())};
    EXPECT_MATRIX_NEAR(adjoint_functional(l).L, outer(kets::one(), kets::zero()), 0.0);
    Rng rng(51);
    TwoTimeVector r{random_ginibre(3, 3, rng)};
    EXPECT_MATRIX_NEAR(adjoint_functional(adjoint_functional(r)).L, r.L, 0.0);
    ComplexMatrix a = random_ginibre(3, 3, rng);
    EXPECT_COMPLEX_NEAR(eval_vector(adjoint_functional(r), a), std::conj(eval_vector(r, a.adjoint())), 1e-13);
}

TEST(PureTwoTimeMatrix, ProductFormAndPositivity) {
    TwoTimeState s = pure_two_time_matrix(TwoTimeVector::from_states(kets::zero(), kets::zero()));
    Rng rng(52);
    ComplexMatrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
    EXPECT_COMPLEX_NEAR(eval_state(s, a, b), a(0, 0) * b(0, 0), 1e-14);
    TwoTimeVector l{random_ginibre(3, 3, rng)};
    TwoTimeState p = pure_two_time_matrix(l);
    EXPECT_COMPLEX_NEAR(eval_state(p, identity(3), identity(3)), complex(std::norm(l.L.trace())), 1e-12);
    for (int t = 0; t < 20; t++) {
        ComplexMatrix x = random_ginibre(3, 3, rng);
        complex e = eval_state(p, x, x.adjoint());
        EXPECT_NEAR(e.real(), std::norm(eval_vector(l, x)), 1e-11);
        EXPECT_NEAR(e.imag(), 0.0, 1e-11);
    }
}

TEST(EvalState, MatchesIndexLoopOracle) {
    Rng rng(53);
    for (size_t d : {2, 3}) {
        ComplexMatrix p = random_positive(d * d, rng);
        TwoTimeState s = TwoTimeState::make(p);
        for (int t = 0; t < 5; t++) {
            ComplexMatrix a = random_ginibre(d, d, rng), b = random_ginibre(d, d, rng);
            EXPECT_COMPLEX_NEAR(eval_state(s, a, b), omega_oracle(p, a, b), 1e-12);
        }
    }
}

TEST(EvalState, ProductStateGivesWeakValueRatio) {
    Rng rng(54);
    for (size_t d : {2, 3}) {
        DensityMatrix ri = random_density(d, rng), rf = random_density(d, rng);
        TwoTimeState s = TwoTimeState::make(kron_t(ri.mat(), rf.mat()));
        ComplexMatrix a = random_hermitian(d, rng);
        complex ratio = eval_state(s, a, identity(d)) / eval_state(s, identity(d), identity(d));
        EXPECT_COMPLEX_NEAR(ratio, weak_value(a, ri, rf).value, 1e-12);
    }
}

TEST(EvalState, MaximallyEntangledProjector) {
    ComplexVector phi = max_entangled_unnorm(2);
    TwoTimeState s = TwoTimeState::make(projector(phi) / 2.0);
    Rng rng(55);
    ComplexMatrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
    EXPECT_COMPLEX_NEAR(eval_state(s, a, b), a.trace() * b.trace() / 2.0, 1e-14);
}

TEST(TwoTimeState, RejectsIndefiniteAndUnnormalized) {
    EXPECT_THROW(TwoTimeState::make(kron(pauli::Z(), identity(2))), InvalidQuantumObject);
    EXPECT_THROW(TwoTimeState::make(identity(4), true), InvalidQuantumObject);
    EXPECT_NO_THROW(TwoTimeState::make(identity(4) / 2.0, true));
}

TEST(TheoremTwo, PositiveOperatorsGivePositiveFunctionals) {
    Rng rng(56);
    for (size_t d : {2, 3}) {
        for (int t = 0; t < 20; t++) {
            TwoTimeState s = TwoTimeState::make(random_positive(d * d, rng, 1 + t % (d * d)));
            for (int k = 0; k < 10; k++) {
                ComplexMatrix a = random_ginibre(d, d, rng);
                complex e = eval_state(s, a, a.adjoint());
                EXPECT_GE(e.real(), -1e-10);
                EXPECT_NEAR(e.imag(), 0.0, 1e-10);
            }
        }
    }
}

TEST(TheoremTwo, TableRoundTripRecoversOperator) {
    Rng rng(57);
    for (size_t d : {2, 3}) {
        ComplexMatrix p = random_positive(d * d, rng);
        TwoTimeState s = TwoTimeState::make(p);
        FunctionalTable table = FunctionalTable::tabulate(
            d, [&](const ComplexMatrix &a, const ComplexMatrix &b) { return eval_state(s, a, b); });
        EXPECT_MATRIX_NEAR(state_from_functional(table).P(), p, 1e-10);
        ComplexMatrix a = random_ginibre(d, d, rng), b = random_ginibre(d, d, rng);
        EXPECT_COMPLEX_NEAR(table.evaluate(a, b), eval_state(s, a, b), 1e-12);
    }
}

TEST(TheoremTwo, PairFunctionalGivesRankOneOperator) {
    Rng rng(58);
    TwoTimeVector l{random_ginibre(2, 2, rng)};
    TwoTimeVector ld = adjoint_functional(l);
    FunctionalTable table = FunctionalTable::tabulate(2, [&](const ComplexMatrix &a, const ComplexMatrix &b) {
        return eval_vector(l, a) * eval_vector(ld, b);
    });
    ComplexMatrix p = state_from_functional(table).P();
    HermitianEigen e = hermitian_eigen(p);
    EXPECT_NEAR(e.values(2), 0.0, 1e-12);
    EXPECT_GT(e.values(3), 1e-6);
    ComplexVector v = double_ket(l.L);
    EXPECT_MATRIX_NEAR(p, outer(v, v), 1e-12);
}

TEST(TheoremTwo, IndefiniteFunctionalsYieldWitness) {
    Rng rng(59);
    for (int t = 0; t < 20; t++) {
        size_t d = 2 + t % 2;
        ComplexMatrix h = random_hermitian(d * d, rng);
        HermitianEigen e = hermitian_eigen(h);
        if (e.values(0) >= 0) {
            h -= (e.values(0) + 0.5) * identity(d * d);
        }
        FunctionalTable table = FunctionalTable::tabulate(
            d, [&](const ComplexMatrix &a, const ComplexMatrix &b) { return omega_oracle(h, a, b); });
        try {
            state_from_functional(table);
            ADD_FAILURE() << "indefinite functional accepted";
        } catch (const NotATwoTimeState &err) {
            complex value = omega_oracle(h, err.witness, err.witness.adjoint());
            EXPECT_LT(value.real(), 0.0);
            EXPECT_NEAR(value.real(), err.min_eigenvalue, 1e-10);
        }
    }
}

TEST(SwapOverlap, Examples) {
    EXPECT_NEAR(swap_overlap(DensityMatrix::maximally_mixed(4)), 0.5, 1e-15);
    EXPECT_NEAR(swap_overlap(projector(max_entangled_unnorm(3)) / 3.0), 3.0, 1e-14);
    EXPECT_NEAR(swap_overlap(DensityMatrix::pure(singlet())), 0.0, 1e-15);
    Rng rng(60);
    for (int t = 0; t < 10; t++) {
        DensityMatrix rho = random_density(9, rng);
        ComplexVector phi = max_entangled_unnorm(3);
        EXPECT_NEAR(swap_overlap(rho), ref::sandwich(phi, rho.mat(), phi).real(), 1e-12);
    }
}

TEST(NormalizedFromDensity, ProductStateGivesDoubleWeakValue) {
    Rng rng(61);
    for (size_t d : {2, 3}) {
        DensityMatrix ri = random_density(d, rng), rf = random_density(d, rng);
        TwoTimeState s = normalized_from_density(DensityMatrix::make(kron_t(ri.mat(), rf.mat())));
        EXPECT_TRUE(s.normalized());
        ComplexMatrix a = random_hermitian(d, rng), b = random_hermitian(d, rng);
        EXPECT_COMPLEX_NEAR(eval_state(s, a, b), double_weak_value(a, b, ri, rf), 1e-12);
        EXPECT_COMPLEX_NEAR(eval_state(s, identity(d), identity(d)), complex(1.0), 1e-12);
    }
}

TEST(NormalizedFromDensity, MaximallyMixed) {
    TwoTimeState s = normalized_from_density(DensityMatrix::maximally_mixed(4));
    Rng rng(62);
    ComplexMatrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
    EXPECT_COMPLEX_NEAR(eval_state(s, a, b), (a * b).trace() / 2.0, 1e-14);
}

TEST(NormalizedFromDensity, SingletRejected) {
    EXPECT_THROW(normalized_from_density(DensityMatrix::pure(singlet())), ZeroSwapOverlap);
}

TEST(NormalizedFromDensity, AlwaysNormalized) {
    Rng rng(63);
    for (int t = 0; t < 30; t++) {
        size_t d = 2 + t % 2;
        TwoTimeState s = normalized_from_density(random_density(d * d, rng));
        EXPECT_COMPLEX_NEAR(eval_state(s, identity(d), identity(d)), complex(1.0), 1e-12);
    }
}

TEST(IsPpt, Examples) {
    Rng rng(64);
    DensityMatrix prod = DensityMatrix::product(random_density(2, rng), random_density(3, rng));
    EXPECT_TRUE(is_ppt(prod).ppt);
    PptCheck bell = is_ppt(DensityMatrix::pure(max_entangled_unnorm(2) / std::sqrt(2.0)));
    EXPECT_FALSE(bell.ppt);
    EXPECT_NEAR(bell.min_eigenvalue, -0.5, 1e-12);
    EXPECT_TRUE(is_ppt(DensityMatrix::maximally_mixed(4)).ppt);
}

TEST(PseudoExpectation, ProductStateIsDoubleWeakValue) {
    Rng rng(65);
    DensityMatrix ri = random_density(2, rng), rf = random_density(2, rng);
    DensityMatrix rho = DensityMatrix::product(ri, rf);
    ComplexMatrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
    EXPECT_COMPLEX_NEAR(pseudo_expectation(rho, a, b), double_weak_value(a, b, ri, rf), 1e-12);
    EXPECT_COMPLEX_NEAR(pseudo_expectation(rho, identity(2), identity(2)), complex(1.0), 1e-14);
}

TEST(PseudoExpectation, AgreesOnPartialTransposeInvariantStates) {
    Rng rng(66);
    for (size_t d : {2, 3}) {
        for (int t = 0; t < 10; t++) {
            DensityMatrix rho = random_ppt_invariant(d, 3, rng);
            EXPECT_MATRIX_NEAR(partial_transpose_2(rho.mat(), d, d), rho.mat(), 1e-12);
            TwoTimeState s = normalized_from_density(rho);
            for (int k = 0; k < 5; k++) {
                ComplexMatrix a = random_ginibre(d, d, rng), b = random_ginibre(d, d, rng);
                EXPECT_COMPLEX_NEAR(pseudo_expectation(rho, a, b), eval_state(s, a, b), 1e-10);
            }
        }
    }
    // Equal mixture of the singlet and |00>: Tr[rho SWAP] = 0.
    ComplexMatrix balanced = 0.5 * projector(singlet()) + 0.5 * projector(kron(kets::zero(), kets::zero()));
    EXPECT_THROW(pseudo_expectation(DensityMatrix::make(balanced), identity(2), identity(2)), ZeroSwapOverlap);
    EXPECT_COMPLEX_NEAR(pseudo_expectation(DensityMatrix::pure(singlet()), pauli::Z(), pauli::Z()), complex(-1.0), 1e-14);
}

TEST(UniversalTranspose, Examples) {
    DensityMatrix mm = universal_transpose(DensityMatrix::maximally_mixed(3));
    EXPECT_MATRIX_NEAR(mm.mat(), identity(3) / 3.0, 1e-15);
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 2.0 / 3;
    expected(1, 1) = 1.0 / 3;
    EXPECT_MATRIX_NEAR(universal_transpose(DensityMatrix::pure(kets::zero())).mat(), expected, 1e-15);
    Rng rng(67);
    EXPECT_NEAR(universal_transpose(random_density(4, rng)).mat().trace().real(), 1.0, 1e-14);
}

TEST(ConvexWeightTransport, WeightsReproduceMixtureFunctional) {
    Rng rng(68);
    EXPECT_EQ(convex_weight_transport({{1.0, random_density(4, rng)}}), std::vector<double>{1.0});
    DensityMatrix r1 = random_density(4, rng), r2 = random_density(4, rng);
    std::vector<std::pair<double, DensityMatrix>> comps = {{0.3, r1}, {0.7, r2}};
    std::vector<double> q = convex_weight_transport(comps);
    DensityMatrix mix = DensityMatrix::make(0.3 * r1.mat() + 0.7 * r2.mat());
    TwoTimeState sm = normalized_from_density(mix), s1 = normalized_from_density(r1), s2 = normalized_from_density(r2);
    for (int t = 0; t < 10; t++) {
        ComplexMatrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
        complex rhs = q[0] * eval_state(s1, a, b) + q[1] * eval_state(s2, a, b);
        EXPECT_COMPLEX_NEAR(eval_state(sm, a, b), rhs, 1e-10);
    }
}

TEST(ConvexWeightTransport, EqualOverlapsKeepWeights) {
    DensityMatrix a = DensityMatrix::pure(kron(kets::zero(), kets::zero()));
    DensityMatrix b = DensityMatrix::pure(kron(kets::one(), kets::one()));
    std::vector<double> q = convex_weight_transport({{0.25, a}, {0.75, b}});
    EXPECT_NEAR(q[0], 0.25, 1e-15);
    EXPECT_NEAR(q[1], 0.75, 1e-15);
    EXPECT_THROW(convex_weight_transport({}), InvalidArgument);
}

}  // namespace
}  // namespace wvkit
