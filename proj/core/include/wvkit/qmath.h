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

#ifndef WVKIT_QMATH_H
#define WVKIT_QMATH_H

// Dense complex linear algebra in the fixed computational basis.
//
// Tensor-product ordering: the basis vector |i>|j> of C^dA (x) C^dB sits at index
// i * dB + j (first factor most significant). Every vectorization, transpose and
// SWAP in the toolkit uses this convention.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wvkit {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default absolute entrywise tolerance for matrix comparisons.
inline constexpr double kDefaultTolerance = 1e-10;

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector kron(const ComplexVector &a, const ComplexVector &b);
/// Left-to-right Kronecker product of a list of factors.
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

ComplexMatrix identity(size_t d);

/// The d^2 x d^2 permutation with SWAP(|a>|b>) = |b>|a>.
ComplexMatrix swap_operator(size_t d);

/// Transposes the second tensor factor: ((i,j),(k,l)) -> ((i,l),(k,j)).
ComplexMatrix partial_transpose_2(const ComplexMatrix &m, size_t dA, size_t dB);

/// Traces out every register not listed in `keep` (kept registers stay in order).
ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const size_t> dims, std::span<const size_t> keep);

/// |A>> = sum_j A|j> (x) |j>, i.e. the row-major vectorization of A.
ComplexVector double_ket(const ComplexMatrix &a);
/// Inverse of double_ket for a vector of length d^2.
ComplexMatrix from_double_ket(const ComplexVector &v);

/// |I>> = sum_i |i>|i>, unnormalized (squared norm d).
ComplexVector max_entangled_unnorm(size_t d);

ComplexMatrix outer(const ComplexVector &ket, const ComplexVector &bra);
ComplexMatrix projector(const ComplexVector &ket);

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tol = kDefaultTolerance);
bool is_square(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kDefaultTolerance);
bool is_unitary(const ComplexMatrix &m, double tol = kDefaultTolerance);

/// Smallest eigenvalue of the Hermitian part (m + m^dagger)/2.
double min_eigenvalue(const ComplexMatrix &m);
bool is_positive_semidefinite(const ComplexMatrix &m, double tol = 1e-9);

/// Integer square root for "d^2"-sized bipartite operators; throws DimensionMismatch
/// if n is not a perfect square.
size_t factor_dimension(size_t n);

/// Hermitian eigendecomposition with eigenvalues in ascending order.
struct HermitianEigen {
    Eigen::VectorXd values;
    ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix &m);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
/// Tensor product of single-qubit Paulis named by a string like "XZI".
ComplexMatrix from_string(std::string_view name);
}  // namespace pauli

namespace kets {
ComplexVector basis(size_t d, size_t i);
ComplexVector zero();
ComplexVector one();
ComplexVector plus();
ComplexVector minus();
ComplexVector plus_i();
ComplexVector minus_i();
/// Returns v / ||v||.
ComplexVector normalized(const ComplexVector &v);
}  // namespace kets

}  // namespace wvkit

#endif
