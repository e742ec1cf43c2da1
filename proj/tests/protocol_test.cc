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

#include <numeric>

#include "gtest/gtest.h"
#include "test_util.h"
#include "wvkit/analytics.h"
#include "wvkit/errors.h"
#include "wvkit/random_objects.h"

namespace wvkit {
namespace {

void expect_table(const OutcomeDistribution &dist, const std::vector<double> &expected, double tol) {
    ASSERT_EQ(dist.probabilities().size(), expected.size());
    for (size_t i = 0; i < expected.size(); i++) {
        EXPECT_NEAR(dist.probabilities()[i], expected[i], tol) << "entry " << i;
    }
}

void expect_same(const OutcomeDistribution &a, const OutcomeDistribution &b, double tol) {
    expect_table(a, b.probabilities(), tol);
}

DensityMatrix pure(const ComplexVector &v) {
    return DensityMatrix::pure(v);
}

TEST(ControlPovm, ProjectorsOverTwoSumToIdentity) {
    const auto &r = control_povm();
    EXPECT_MATRIX_NEAR(r[0], projector(kets::plus()) / 2.0, 1e-15);
    EXPECT_MATRIX_NEAR(r[1], projector(kets::minus()) / 2.0, 1e-15);
    EXPECT_MATRIX_NEAR(r[2], projector(kets::plus_i()) / 2.0, 1e-15);
    EXPECT_MATRIX_NEAR(r[3], projector(kets::minus_i()) / 2.0, 1e-15);
    EXPECT_MATRIX_NEAR(r[0] + r[1] + r[2] + r[3], identity(2), 1e-15);
}

TEST(ControlledSwap, ActsOnControlBranches) {
    ComplexMatrix u = controlled_swap_gate(2);
    EXPECT_TRUE(is_unitary(u));
    ComplexVector in0 = kron(kron(kets::zero(), kets::one()), kets::zero());
    ComplexVector in1 = kron(kron(kets::zero(), kets::one()), kets::one());
    EXPECT_LE((u * in0 - in0).norm(), 0.0);
    EXPECT_LE((u * in1 - kron(kron(kets::one(), kets::zero()), kets::one())).norm(), 0.0);
}

TEST(OutcomeDistribution, ValidatesTables) {
    EXPECT_THROW(OutcomeDistribution::make({2}, {0.25, 0.25, 0.25, 0.25}), DimensionMismatch);
    EXPECT_THROW(OutcomeDistribution::make({1}, {0.6, 0.6, -0.1, -0.1}), NegativeProbability);
    EXPECT_THROW(OutcomeDistribution::make({1}, {0.3, 0.3, 0.3, 0.3}), InvalidArgument);
    OutcomeDistribution d = OutcomeDistribution::make({1}, {0.5, -1e-13, 0.25, 0.25});
    EXPECT_EQ(d(0, 1), 0.0);
    EXPECT_NEAR(std::accumulate(d.probabilities().begin(), d.probabilities().end(), 0.0), 1.0, 1e-15);
}

TEST(DistFig1a, ComputationalExamples) {
    Povm comp = Povm::computational(2);
    expect_table(dist_fig1a(comp, pure(kets::zero()), pure(kets::zero())),
                 {0.5, 0, 0.25, 0.25, 0, 0, 0, 0}, 1e-15);
    expect_table(dist_fig1a(comp, pure(kets::zero()), pure(kets::one())), std::vector<double>(8, 0.125), 1e-15);
    expect_table(dist_fig1a(comp, pure(kets::plus()), pure(kets::zero())),
                 {0.3125, 0.0625, 0.1875, 0.1875, 0.0625, 0.0625, 0.0625, 0.0625}, 1e-15);
}

TEST(DistFig1a, ConditionalTables) {
    OutcomeDistribution d = dist_fig1a(Povm::computational(2), pure(kets::plus()), pure(kets::zero()));
    std::vector<double> re = d.conditional(ControlBasis::kReal), im = d.conditional(ControlBasis::kImaginary);
    std::vector<double> re_expected = {0.625, 0.125, 0.125, 0.125}, im_expected = {0.375, 0.375, 0.125, 0.125};
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(re[i], re_expected[i], 1e-15);
        EXPECT_NEAR(im[i], im_expected[i], 1e-15);
    }
}

TEST(DistFig1a, AgreesWithCircuitOracle) {
    Rng rng(70);
    for (size_t d : {2, 3, 4}) {
        for (int t = 0; t < 100; t++) {
            Povm p = random_povm(d, 1 + t % 4, rng);
            DensityMatrix ri = random_density(d, rng, 1 + t % d), rf = random_density(d, rng);
            expect_same(dist_fig1a(p, ri, rf), circuit_oracle_fig1a(p, ri, rf), 1e-12);
        }
    }
}

TEST(DistFig1a, AgreesWithBranchBookkeepingOracle) {
    Rng rng(71);
    for (size_t d : {2, 3}) {
        for (int t = 0; t < 10; t++) {
            Povm p = random_povm(d, 3, rng);
            DensityMatrix ri = random_density(d, rng), rf = random_density(d, rng);
            std::vector<ComplexMatrix> joint;
            for (const auto &e : p.elements()) {
                joint.push_back(kron(e, identity(d)));
            }
            std::vector<double> expected = ref::circuit_probabilities(joint, kron(ri.mat(), rf.mat()), d);
            expect_table(dist_fig1a(p, ri, rf), expected, 1e-12);
        }
    }
}

TEST(DistFig1a, EqualPureStatesNeverGiveMinus) {
    Rng rng(72);
    DensityMatrix rho = pure(random_ket(3, rng));
    Povm p = random_povm(3, 4, rng);
    OutcomeDistribution oracle = circuit_oracle_fig1a(p, rho, rho);
    for (size_t j = 0; j < p.size(); j++) {
        EXPECT_NEAR(oracle(j, 1), 0.0, 1e-14);
    }
}

TEST(DistFig1a, ControlIdentities) {
    Rng rng(73);
    for (int t = 0; t < 20; t++) {
        size_t d = 2 + t % 3;
        Povm p = random_povm(d, 3, rng);
        DensityMatrix ri = random_density(d, rng), rf = random_density(d, rng);
        OutcomeDistribution dist = dist_fig1a(p, ri, rf);
        complex overlap = (ri.mat() * rf.mat()).trace();
        double half = 0, re = 0, im = 0;
        for (size_t j = 0; j < p.size(); j++) {
            half += dist(j, 0) + dist(j, 1);
            re += 4 * (dist(j, 0) - dist(j, 1));
            im += 4 * (dist(j, 2) - dist(j, 3));
            for (size_t c = 0; c < 4; c++) {
                EXPECT_GE(dist(j, c), 0.0);
            }
        }
        EXPECT_NEAR(half, 0.5, 1e-12);
        EXPECT_NEAR(re, 2 * overlap.real(), 1e-12);
        EXPECT_NEAR(im, -2 * overlap.imag(), 1e-12);
    }
}

TEST(DistFig1b, TrivialSecondPovmReducesToFig1a) {
    Rng rng(74);
    Povm p = random_povm(3, 3, rng);
    DensityMatrix ri = random_density(3, rng), rf = random_density(3, rng);
    OutcomeDistribution b = dist_fig1b(p, Povm::trivial(3), ri, rf);
    EXPECT_EQ(b.shape(), (std::vector<size_t>{3, 1}));
    expect_same(b.marginalize_last(), dist_fig1a(p, ri, rf), 1e-14);
}

TEST(DistFig1b, MarginalIsFig1a) {
    Rng rng(75);
    for (int t = 0; t < 10; t++) {
        Povm p = random_povm(2, 3, rng), q = random_povm(2, 2, rng);
        DensityMatrix ri = random_density(2, rng), rf = random_density(2, rng);
        expect_same(dist_fig1b(p, q, ri, rf).marginalize_last(), dist_fig1a(p, ri, rf), 1e-13);
    }
}

TEST(DistFig1b, PureZeroSupport) {
    Povm comp = Povm::computational(2);
    OutcomeDistribution d = dist_fig1b(comp, comp, pure(kets::zero()), pure(kets::zero()));
    for (size_t m = 1; m < 4; m++) {
        for (size_t c = 0; c < 4; c++) {
            EXPECT_EQ(d(m, c), 0.0);
        }
    }
}

TEST(DistFig1b, AgreesWithCircuitOracle) {
    Rng rng(76);
    for (size_t d : {2, 3}) {
        for (int t = 0; t < 20; t++) {
            Povm p = random_povm(d, 2, rng), q = random_povm(d, 3, rng);
            DensityMatrix ri = random_density(d, rng), rf = random_density(d, rng);
            OutcomeDistribution dist = dist_fig1b(p, q, ri, rf);
            expect_same(dist, circuit_oracle_fig1b(p, q, ri, rf), 1e-12);
            double sum = std::accumulate(dist.probabilities().begin(), dist.probabilities().end(), 0.0);
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(DistFig1b, ReweightingRecoversInducedMeasure) {
    Rng rng(77);
    Povm p = random_povm(3, 2, rng), q = random_povm(3, 3, rng);
    DensityMatrix ri = random_density(3, rng), rf = random_density(3, rng);
    std::vector<complex> induced = induced_measure_fig1b(p, q, ri, rf);
    std::vector<complex> recovered = reweighted_measure(dist_fig1b(p, q, ri, rf));
    ASSERT_EQ(induced.size(), 6u);
    for (size_t j = 0; j < 2; j++) {
        for (size_t k = 0; k < 3; k++) {
            complex expected = (p[j] * ri.mat() * q[k] * rf.mat()).trace();
            EXPECT_COMPLEX_NEAR(induced[j * 3 + k], expected, 1e-14);
            EXPECT_COMPLEX_NEAR(recovered[j * 3 + k], expected, 1e-12);
        }
    }
}

TEST(DistFig1c, ProductInputMatchesFig1b) {
    Rng rng(78);
    Povm p = random_povm(2, 2, rng), q = random_povm(2, 3, rng);
    DensityMatrix ri = random_density(2, rng), rf = random_density(2, rng);
    OutcomeDistribution c = dist_fig1c(p, q, DensityMatrix::product(ri, rf));
    EXPECT_EQ(c.shape(), (std::vector<size_t>{2, 3}));
    expect_same(c, dist_fig1b(p, q, ri, rf), 1e-12);
}

TEST(DistFig1c, BellStateMeasureNormalization) {
    DensityMatrix bell = pure(max_entangled_unnorm(2) / std::sqrt(2.0));
    std::vector<complex> q = induced_measure_joint(Povm::trivial(4), bell);
    ASSERT_EQ(q.size(), 1u);
    EXPECT_COMPLEX_NEAR(q[0], complex(1.0), 1e-14);
    OutcomeDistribution d = dist_fig1c(Povm::trivial(2), Povm::trivial(2), bell);
    EXPECT_COMPLEX_NEAR(reweighted_measure(d)[0], complex(1.0), 1e-14);
}

TEST(DistFig1c, NormalizedOnRandomStates) {
    Rng rng(79);
    for (int t = 0; t < 10; t++) {
        OutcomeDistribution d = dist_fig1c(random_povm(2, 2, rng), random_povm(2, 2, rng), random_density(4, rng));
        EXPECT_NEAR(std::accumulate(d.probabilities().begin(), d.probabilities().end(), 0.0), 1.0, 1e-12);
    }
}

TEST(DistFig1d, ProductPovmMatchesFig1c) {
    Rng rng(80);
    Povm p = random_povm(2, 2, rng), q = random_povm(2, 2, rng);
    DensityMatrix rho = random_density(4, rng);
    expect_same(dist_fig1d(Povm::product(p, q), rho), dist_fig1c(p, q, rho).flattened(), 1e-13);
}

TEST(DistFig1d, AgreesWithCircuitOracles) {
    Rng rng(81);
    for (size_t d : {2, 3}) {
        for (int t = 0; t < 20; t++) {
            Povm joint = random_povm(d * d, 3, rng);
            DensityMatrix rho = random_density(d * d, rng);
            OutcomeDistribution dist = dist_fig1d(joint, rho);
            expect_same(dist, circuit_oracle(joint, rho, {joint.size()}), 1e-12);
            expect_table(dist, ref::circuit_probabilities(joint.elements(), rho.mat(), d), 1e-12);
        }
    }
}

TEST(DistFig1d, TrivialPovmMeasureIsSwapExpectation) {
    Rng rng(82);
    DensityMatrix rho = random_density(9, rng);
    std::vector<complex> q = reweighted_measure(dist_fig1d(Povm::trivial(9), rho));
    EXPECT_COMPLEX_NEAR(q[0], (rho.mat() * swap_operator(3)).trace(), 1e-12);
}

TEST(MarginalizationChain, JointToSinglePovm) {
    Rng rng(83);
    Povm p = random_povm(2, 3, rng);
    DensityMatrix ri = random_density(2, rng), rf = random_density(2, rng);
    DensityMatrix prod = DensityMatrix::product(ri, rf);
    Povm trivial = Povm::trivial(2);
    OutcomeDistribution d = dist_fig1d(Povm::product(p, trivial), prod);
    OutcomeDistribution c = dist_fig1c(p, trivial, prod);
    OutcomeDistribution b = dist_fig1b(p, trivial, ri, rf);
    expect_same(d, c.flattened(), 1e-13);
    expect_same(c, b, 1e-13);
    expect_same(b.marginalize_last(), dist_fig1a(p, ri, rf), 1e-13);
}

TEST(InducedMeasure, JointMatchesTraceWithSwap) {
    Rng rng(84);
    Povm joint = random_povm(4, 3, rng);
    DensityMatrix rho = random_density(4, rng);
    std::vector<complex> q = induced_measure_joint(joint, rho);
    std::vector<complex> recovered = reweighted_measure(dist_fig1d(joint, rho));
    for (size_t j = 0; j < joint.size(); j++) {
        complex expected = ref::trace(ref::mul(ref::from_eigen(joint[j]), ref::mul(ref::from_eigen(rho.mat()), ref::swap(2))));
        EXPECT_COMPLEX_NEAR(q[j], expected, 1e-13);
        EXPECT_COMPLEX_NEAR(recovered[j], expected, 1e-12);
    }
}

TEST(Protocol, RejectsMismatchedDimensions) {
    Rng rng(85);
    EXPECT_THROW(dist_fig1a(Povm::computational(3), random_density(2, rng), random_density(2, rng)),
                 DimensionMismatch);
    EXPECT_THROW(dist_fig1d(Povm::computational(3), random_density(4, rng)), DimensionMismatch);
}

}  // namespace
}  // namespace wvkit
