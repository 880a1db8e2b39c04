// Copyright 2026 The renyicap developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace renyicap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A type invariant failed at construction or validation (CLI exit code 3).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside an operation's stated domain (CLI exit code 4).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file or JSON (CLI exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative cutoff for support detection: eigenvalues above
/// support_tol * lambda_max count as part of the support.
inline constexpr double kSupportTol = 1e-10;

/// Hermiticity tolerance enforced when constructing a HermitianOperator.
inline constexpr double kHermTol = 1e-10;

/// Base-2 logarithms throughout; natural logs appear only in internal
/// derivative checks inside tests.
inline double log2_safe(double x) { return std::log2(x); }

/// Dense Hermitian matrix. The constructor checks max |H_ij - conj(H_ji)|
/// against `herm_tol` and stores the symmetrized (H + H^dag)/2.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m, double herm_tol = kHermTol);

  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);

  Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }

  Complex trace() const { return mat_.trace(); }
  double real_trace() const { return mat_.trace().real(); }

 private:
  struct AlreadyHermitian {};
  HermitianOperator(Matrix m, AlreadyHermitian) : mat_(std::move(m)) {}
  Matrix mat_;

  friend HermitianOperator hermitian_unchecked(Matrix m);
};

/// Wraps a matrix that is Hermitian by construction, skipping the tolerance
/// check (used on hot paths after explicit symmetrization).
HermitianOperator hermitian_unchecked(Matrix m);

/// Eigendecomposition of a Hermitian operator: eigenvalues ascending,
/// eigenvectors as the columns of a unitary matrix.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

/// Full eigendecomposition with validation: reconstruction error at most
/// 1e-9 * (1 + ||H||) and ||V^dag V - I|| at most 1e-10, both in the
/// operator norm. Throws InvariantError if the solver fails to converge.
Spectrum herm_eigendecompose(const HermitianOperator& h);

/// Eigenvalues only, ascending, no validation. Hot-path helper.
RealVector herm_eigenvalues(const Matrix& herm);

/// Fractional pseudo-power on the support of a PSD operator: eigenvalues
/// above support_tol * lambda_max map to lambda^t, the rest to zero.
/// Throws InvariantError if some eigenvalue is below -support_tol * lambda_max.
HermitianOperator fractional_power(const HermitianOperator& a, double t,
                                   double support_tol = kSupportTol);

/// Schatten alpha-norm (sum of singular values^alpha)^(1/alpha). Requires
/// alpha >= 1; +infinity is accepted as a sentinel for the largest singular
/// value.
double schatten_norm(const Matrix& x, double alpha);

/// Largest singular value.
double operator_norm(const Matrix& x);

/// Kronecker product with (i_A, i_B) row-major index convention.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Partial trace of an operator on a tensor product of systems with the
/// given dimensions, keeping the systems listed in `keep` (in their original
/// order). Throws DomainError if the dimensions do not multiply up.
HermitianOperator partial_trace(const HermitianOperator& m,
                                const std::vector<Index>& dims,
                                const std::vector<std::size_t>& keep);

/// Generic partial trace on a plain matrix (same index conventions).
Matrix partial_trace(const Matrix& m, const std::vector<Index>& dims,
                     const std::vector<std::size_t>& keep);

/// Partial transpose of the factor `which` on a bipartite system.
Matrix partial_transpose(const Matrix& m, Index dim_first, Index dim_second,
                         std::size_t which);

/// Projector onto the eigenspaces of a PSD operator with eigenvalue above
/// tol * lambda_max.
HermitianOperator support_projector(const HermitianOperator& a,
                                    double tol = kSupportTol);

/// True iff ||(I - P_B) A (I - P_B)|| <= tol * ||A|| in operator norm.
bool support_contained(const HermitianOperator& a, const HermitianOperator& b,
                       double tol = kSupportTol);

/// Smallest eigenvalue (for PSD checks).
double min_eigenvalue(const HermitianOperator& h);

/// Max |entry| of the difference, a cheap distance used in tests.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace renyicap
