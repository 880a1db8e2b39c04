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

#include "renyicap/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace renyicap {

namespace {

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& m, double herm_tol) {
  if (m.rows() != m.cols())
    throw InvariantError("HermitianOperator: matrix is not square");
  if (!all_finite(m))
    throw InvariantError("HermitianOperator: non-finite entry");
  const double asym = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
  if (asym > herm_tol)
    throw InvariantError("HermitianOperator: hermiticity violated, max |H - H^dag| = " +
                         std::to_string(asym));
  mat_ = 0.5 * (m + m.adjoint().eval());
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return hermitian_unchecked(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return hermitian_unchecked(Matrix::Zero(dim, dim));
}

HermitianOperator hermitian_unchecked(Matrix m) {
  return HermitianOperator(std::move(m), HermitianOperator::AlreadyHermitian{});
}

Spectrum herm_eigendecompose(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw InvariantError("herm_eigendecompose: eigensolver did not converge");
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};

  const Index d = h.dim();
  const Matrix recon =
      s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
  const double scale = 1.0 + operator_norm(h.matrix());
  if (operator_norm(recon - h.matrix()) > 1e-9 * scale)
    throw InvariantError("herm_eigendecompose: reconstruction error beyond tolerance");
  const Matrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
  if (operator_norm(gram - Matrix::Identity(d, d)) > 1e-10)
    throw InvariantError("herm_eigendecompose: eigenvector matrix not unitary");
  return s;
}

RealVector herm_eigenvalues(const Matrix& herm) {
  const Index d = herm.rows();
  if (d == 1) {
    RealVector v(1);
    v(0) = herm(0, 0).real();
    return v;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  if (d == 2 || d == 3)
    solver.computeDirect(herm, Eigen::EigenvaluesOnly);
  else
    solver.compute(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

HermitianOperator fractional_power(const HermitianOperator& a, double t,
                                   double support_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success)
    throw InvariantError("fractional_power: eigensolver did not converge");
  const RealVector& ev = solver.eigenvalues();
  const double lam_max = ev(ev.size() - 1);
  const double cutoff = support_tol * std::max(lam_max, 0.0);
  if (ev(0) < -support_tol * lam_max)
    throw InvariantError("fractional_power: operator not PSD, min eigenvalue = " +
                         std::to_string(ev(0)));
  RealVector powered(ev.size());
  for (Index i = 0; i < ev.size(); ++i)
    powered(i) = ev(i) > cutoff ? std::pow(ev(i), t) : 0.0;
  const Matrix v = solver.eigenvectors();
  Matrix out = v * powered.asDiagonal() * v.adjoint();
  return hermitian_unchecked(0.5 * (out + out.adjoint().eval()));
}

double schatten_norm(const Matrix& x, double alpha) {
  if (alpha < 1.0)
    throw DomainError("schatten_norm: alpha must be >= 1");
  Eigen::JacobiSVD<Matrix> svd(x);
  const RealVector& sv = svd.singularValues();
  if (std::isinf(alpha)) return sv.size() > 0 ? sv(0) : 0.0;
  double sum = 0.0;
  for (Index i = 0; i < sv.size(); ++i) sum += std::pow(sv(i), alpha);
  return std::pow(sum, 1.0 / alpha);
}

double operator_norm(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, const std::vector<Index>& dims,
                     const std::vector<std::size_t>& keep) {
  Index total = 1;
  for (Index d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw DomainError("partial_trace: dimension list does not match the operator");

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size())
      throw DomainError("partial_trace: keep index out of range");
    kept[k] = true;
  }

  Index dim_keep = 1, dim_tr = 1;
  for (std::size_t i = 0; i < dims.size(); ++i)
    (kept[i] ? dim_keep : dim_tr) *= dims[i];

  // Strides of each factor in the full row-major multi-index.
  std::vector<Index> stride(dims.size());
  Index acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    stride[i] = acc;
    acc *= dims[i];
  }

  auto flatten = [&](Index idx_keep, Index idx_tr) {
    Index full = 0, k = idx_keep, t = idx_tr;
    for (std::size_t i = dims.size(); i-- > 0;) {
      if (kept[i]) {
        full += (k % dims[i]) * stride[i];
        k /= dims[i];
      } else {
        full += (t % dims[i]) * stride[i];
        t /= dims[i];
      }
    }
    return full;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (Index r = 0; r < dim_keep; ++r)
    for (Index c = 0; c < dim_keep; ++c) {
      Complex sum = 0.0;
      for (Index t = 0; t < dim_tr; ++t)
        sum += m(flatten(r, t), flatten(c, t));
      out(r, c) = sum;
    }
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& m,
                                const std::vector<Index>& dims,
                                const std::vector<std::size_t>& keep) {
  Matrix out = partial_trace(m.matrix(), dims, keep);
  return hermitian_unchecked(0.5 * (out + out.adjoint().eval()));
}

Matrix partial_transpose(const Matrix& m, Index dim_first, Index dim_second,
                         std::size_t which) {
  if (m.rows() != dim_first * dim_second || m.cols() != m.rows())
    throw DomainError("partial_transpose: dimensions do not match the operator");
  Matrix out(m.rows(), m.cols());
  for (Index a = 0; a < dim_first; ++a)
    for (Index b = 0; b < dim_second; ++b)
      for (Index c = 0; c < dim_first; ++c)
        for (Index d = 0; d < dim_second; ++d) {
          const Index row = a * dim_second + b;
          const Index col = c * dim_second + d;
          const Index src_row = which == 0 ? c * dim_second + b : a * dim_second + d;
          const Index src_col = which == 0 ? a * dim_second + d : c * dim_second + b;
          out(row, col) = m(src_row, src_col);
        }
  return out;
}

HermitianOperator support_projector(const HermitianOperator& a, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success)
    throw InvariantError("support_projector: eigensolver did not converge");
  const RealVector& ev = solver.eigenvalues();
  const double cutoff = tol * std::max(ev(ev.size() - 1), 0.0);
  Matrix p = Matrix::Zero(a.dim(), a.dim());
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff)
      p += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
  return hermitian_unchecked(0.5 * (p + p.adjoint().eval()));
}

bool support_contained(const HermitianOperator& a, const HermitianOperator& b,
                       double tol) {
  const Matrix q = Matrix::Identity(b.dim(), b.dim()) - support_projector(b, tol).matrix();
  const double residual = operator_norm(q * a.matrix() * q);
  return residual <= tol * operator_norm(a.matrix());
}

double min_eigenvalue(const HermitianOperator& h) {
  return herm_eigenvalues(h.matrix())(0);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("max_abs_diff: shape mismatch");
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace renyicap
