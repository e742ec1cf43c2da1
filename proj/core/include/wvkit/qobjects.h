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

#ifndef WVKIT_QOBJECTS_H
#define WVKIT_QOBJECTS_H

#include <vector>

#include "wvkit/qmath.h"

namespace wvkit {

/// Tolerances applied when validating states and measurements.
struct ValidationTolerance {
    double hermitian = kDefaultTolerance;
    double trace = kDefaultTolerance;
    /// Smallest eigenvalue accepted; anything in [-positivity, 0) is clipped to zero.
    double positivity = 1e-9;
    /// Tolerance on sum_j P_j = I.
    double completeness = kDefaultTolerance;
};

/// A validated density matrix: Hermitian, positive semidefinite and of unit trace.
///
/// Construction hermitizes the input and clips eigenvalues in [-tol, 0) to zero
/// (renormalizing the trace), so downstream code can treat the matrix as exactly
/// positive.
class DensityMatrix {
   public:
    /// Validates `mat`; throws InvalidQuantumObject naming the failed predicate.
    /// `dims` lists tensor factor dimensions; empty means a single factor.
    static DensityMatrix make(
        const ComplexMatrix &mat, std::vector<size_t> dims = {}, const ValidationTolerance &tol = {});
    static DensityMatrix pure(const ComplexVector &ket, std::vector<size_t> dims = {});
    static DensityMatrix maximally_mixed(size_t d);
    /// rho (x) sigma with factor dimensions concatenated.
    static DensityMatrix product(const DensityMatrix &a, const DensityMatrix &b);

    const ComplexMatrix &mat() const {
        return mat_;
    }
    size_t dim() const {
        return (size_t)mat_.rows();
    }
    const std::vector<size_t> &dims() const {
        return dims_;
    }
    double purity() const;
    DensityMatrix transpose() const;

   private:
    DensityMatrix(ComplexMatrix mat, std::vector<size_t> dims) : mat_(std::move(mat)), dims_(std::move(dims)) {
    }
    ComplexMatrix mat_;
    std::vector<size_t> dims_;
};

/// A positive operator-valued measure (P_j)_j with P_j >= 0 and sum_j P_j = I.
class Povm {
   public:
    static Povm make(std::vector<ComplexMatrix> elements, const ValidationTolerance &tol = {});
    /// Rank-one projectors onto the computational basis.
    static Povm computational(size_t d);
    /// The single-outcome POVM {I}.
    static Povm trivial(size_t d);
    /// (P_j (x) Q_k) with flattened index j * |Q| + k.
    static Povm product(const Povm &a, const Povm &b);

    const std::vector<ComplexMatrix> &elements() const {
        return elements_;
    }
    const ComplexMatrix &operator[](size_t j) const {
        return elements_[j];
    }
    size_t size() const {
        return elements_.size();
    }
    size_t dim() const {
        return (size_t)elements_.front().rows();
    }

   private:
    explicit Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    }
    std::vector<ComplexMatrix> elements_;
};

/// An observable A together with a POVM and real outcome values x_j. When the
/// object is unbiased, A = sum_j x_j P_j.
class UnbiasedObservable {
   public:
    /// Defines A := sum_j x_j P_j, which is unbiased by construction.
    static UnbiasedObservable fit(Povm povm, std::vector<double> values);
    /// Pairs a POVM with a claimed target observable without checking it;
    /// use check_unbiased to audit the claim.
    static UnbiasedObservable claim(Povm povm, std::vector<double> values, ComplexMatrix observable);

    const Povm &povm() const {
        return povm_;
    }
    const std::vector<double> &values() const {
        return values_;
    }
    const ComplexMatrix &observable() const {
        return observable_;
    }
    /// max_j |x_j|.
    double x_max() const {
        return x_max_;
    }
    size_t dim() const {
        return povm_.dim();
    }

   private:
    UnbiasedObservable(Povm povm, std::vector<double> values, ComplexMatrix observable);
    Povm povm_;
    std::vector<double> values_;
    ComplexMatrix observable_;
    double x_max_;
};

struct SpectralTerm {
    double value;
    ComplexMatrix projector;
};

/// Distinct eigenvalues (descending) with eigenprojectors; eigenvalues closer than
/// `merge_tol` are treated as a single degenerate eigenvalue.
std::vector<SpectralTerm> spectral_decompose(
    const ComplexMatrix &a, double merge_tol = 1e-8, double hermitian_tol = kDefaultTolerance);

/// Noisy measurement P_j = (1-p) Q_j + p lambda_j I with values
/// x_j = (a_j - p abar) / (1-p), abar = sum_j lambda_j a_j.
UnbiasedObservable noisy_measurement(const ComplexMatrix &a, double p, const std::vector<double> &lambda);
/// Same with lambda uniform over the distinct eigenvalues.
UnbiasedObservable noisy_measurement(const ComplexMatrix &a, double p);
/// The projective (noiseless) spectral measurement of a.
UnbiasedObservable projective_measurement(const ComplexMatrix &a);

struct UnbiasednessCheck {
    bool ok;
    double max_deviation;
};
UnbiasednessCheck check_unbiased(const UnbiasedObservable &obs, double tol = kDefaultTolerance);

}  // namespace wvkit

#endif
