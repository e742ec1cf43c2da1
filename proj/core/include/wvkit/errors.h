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

#ifndef WVKIT_ERRORS_H
#define WVKIT_ERRORS_H

#include <stdexcept>
#include <string>

namespace wvkit {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (non-square, wrong factor dimensions, ...).
class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

/// An argument lies outside its documented domain (p = 1, empty POVM, c > 3, ...).
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// A matrix failed one of the density-matrix or POVM predicates.
class InvalidQuantumObject : public Error {
   public:
    enum class Predicate { kNotSquare, kNotHermitian, kNegativeEigenvalue, kTraceNotOne, kNotComplete, kEmpty };

    InvalidQuantumObject(Predicate predicate, const std::string &what) : Error(what), predicate_(predicate) {
    }
    Predicate predicate() const {
        return predicate_;
    }

   private:
    Predicate predicate_;
};

const char *predicate_name(InvalidQuantumObject::Predicate predicate);

/// Errors that come from a numerical precondition of the estimation problem
/// (vanishing overlaps), as opposed to malformed input.
class PreconditionError : public Error {
   public:
    using Error::Error;
};

/// Tr[rho_in rho_fin] vanishes, so the weak value is undefined.
class OrthogonalPrePostSelection : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
};

/// Tr[rho^{T2} SWAP] (or Tr[rho SWAP]) vanishes, so the normalized functional is undefined.
class ZeroSwapOverlap : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
};

/// The sampled overlap is not above its Hoeffding radius; the ratio bound does not apply.
class OverlapTooSmall : public PreconditionError {
   public:
    OverlapTooSmall(const std::string &what, double mu_hat, double epsilon_mu)
        : PreconditionError(what), mu_hat(mu_hat), epsilon_mu(epsilon_mu) {
    }
    double mu_hat;
    double epsilon_mu;
};

/// An outcome table contains probabilities that are negative beyond rounding noise.
class NegativeProbability : public Error {
   public:
    using Error::Error;
};

}  // namespace wvkit

#endif
