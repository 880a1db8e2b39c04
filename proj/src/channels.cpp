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

#include "renyicap/channels.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "renyicap/rng.hpp"

namespace renyicap {

namespace {
constexpr double kStateTol = 1e-10;
constexpr double kTpTol = 1e-9;
}  // namespace

DensityMatrix::DensityMatrix(HermitianOperator op, double tol) : op_(std::move(op)) {
  const double lam_min = min_eigenvalue(op_);
  if (lam_min < -tol)
    throw InvariantError("DensityMatrix: not PSD, min eigenvalue = " +
                         std::to_string(lam_min));
  const double tr = op_.real_trace();
  if (std::abs(tr - 1.0) > tol)
    throw InvariantError("DensityMatrix: trace differs from one by " +
                         std::to_string(tr - 1.0));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(hermitian_unchecked(
      Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (norm <= 0.0) throw DomainError("DensityMatrix::pure: zero vector");
  const Vector unit = psi / norm;
  return DensityMatrix(hermitian_unchecked(unit * unit.adjoint()));
}

DensityMatrix DensityMatrix::basis_state(Index dim, Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return pure(v);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return 0.5 * schatten_norm(a.matrix() - b.matrix(), 1.0);
}

Ensemble::Ensemble(std::vector<double> p, std::vector<DensityMatrix> s)
    : probs(std::move(p)), states(std::move(s)) {
  if (probs.empty() || probs.size() != states.size())
    throw InvariantError("Ensemble: probability and state counts differ");
  double sum = 0.0;
  for (double q : probs) {
    if (q < 0.0) throw InvariantError("Ensemble: negative probability");
    sum += q;
  }
  if (std::abs(sum - 1.0) > kStateTol)
    throw InvariantError("Ensemble: probabilities sum to " + std::to_string(sum));
  const Index d = states.front().dim();
  for (const auto& st : states)
    if (st.dim() != d)
      throw InvariantError("Ensemble: states live on different spaces");
}

DensityMatrix Ensemble::average() const {
  Matrix acc = Matrix::Zero(state_dim(), state_dim());
  for (std::size_t x = 0; x < size(); ++x) acc += probs[x] * states[x].matrix();
  return DensityMatrix(hermitian_unchecked(0.5 * (acc + acc.adjoint().eval())));
}

DensityMatrix CqState::flatten() const {
  const Index d = conditionals.front().dim();
  const Index n = static_cast<Index>(probs.size());
  Matrix joint = Matrix::Zero(n * d, n * d);
  for (Index x = 0; x < n; ++x)
    joint.block(x * d, x * d, d, d) = probs[x] * conditionals[x].matrix();
  return DensityMatrix(hermitian_unchecked(joint));
}

Povm::Povm(std::vector<HermitianOperator> els) : elements(std::move(els)) {
  if (elements.empty()) throw InvariantError("Povm: no elements");
  const Index d = elements.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements) {
    if (e.dim() != d) throw InvariantError("Povm: element dimension mismatch");
    if (min_eigenvalue(e) < -kStateTol)
      throw InvariantError("Povm: element not PSD");
    sum += e.matrix();
  }
  if (operator_norm(sum - Matrix::Identity(d, d)) > kTpTol)
    throw InvariantError("Povm: elements do not sum to the identity");
}

std::vector<double> Povm::measure(const DensityMatrix& rho) const {
  std::vector<double> out(size());
  for (std::size_t m = 0; m < size(); ++m)
    out[m] = (elements[m].matrix() * rho.matrix()).trace().real();
  return out;
}

KrausChannel::KrausChannel(Index dim_in, Index dim_out, std::vector<Matrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvariantError("KrausChannel: empty Kraus list");
  for (const auto& a : kraus_)
    if (a.rows() != dim_out_ || a.cols() != dim_in_)
      throw InvariantError("KrausChannel: Kraus operator has wrong shape");
  Matrix acc = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& a : kraus_) acc += a.adjoint() * a;
  trace_preserving_ =
      operator_norm(acc - Matrix::Identity(dim_in_, dim_in_)) <= kTpTol;
}

KrausChannel KrausChannel::identity(Index dim) {
  return KrausChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  if (rho.dim() != dim_in_)
    throw DomainError("KrausChannel::apply: input dimension mismatch");
  if (!trace_preserving_)
    throw DomainError("KrausChannel::apply: channel is not trace-preserving");
  Matrix out = apply_matrix(rho.matrix());
  return DensityMatrix(hermitian_unchecked(0.5 * (out + out.adjoint().eval())));
}

Matrix KrausChannel::apply_matrix(const Matrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_)
    throw DomainError("KrausChannel::apply_matrix: input dimension mismatch");
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& a : kraus_) out.noalias() += a * x * a.adjoint();
  return out;
}

Matrix KrausChannel::apply_pure(const Vector& psi) const {
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& a : kraus_) {
    const Vector w = a * psi;
    out.noalias() += w * w.adjoint();
  }
  return out;
}

HermitianOperator KrausChannel::choi() const {
  // (ch (x) id)(|gamma><gamma|) = sum_k vec(A_k) vec(A_k)^dag with vec in
  // (output, input) row-major order.
  Matrix c = Matrix::Zero(dim_out_ * dim_in_, dim_out_ * dim_in_);
  for (const auto& a : kraus_) {
    Vector w(dim_out_ * dim_in_);
    for (Index b = 0; b < dim_out_; ++b)
      for (Index i = 0; i < dim_in_; ++i) w(b * dim_in_ + i) = a(b, i);
    c.noalias() += w * w.adjoint();
  }
  return hermitian_unchecked(0.5 * (c + c.adjoint().eval()));
}

Isometry KrausChannel::stinespring() const {
  if (!trace_preserving_)
    throw DomainError("stinespring: channel is not trace-preserving");
  const Index k = static_cast<Index>(kraus_.size());
  Matrix v = Matrix::Zero(dim_out_ * k, dim_in_);
  for (Index e = 0; e < k; ++e)
    for (Index b = 0; b < dim_out_; ++b)
      for (Index a = 0; a < dim_in_; ++a) v(b * k + e, a) = kraus_[e](b, a);
  return Isometry{std::move(v), dim_out_, k};
}

KrausChannel KrausChannel::complementary() const {
  const Index k = static_cast<Index>(kraus_.size());
  std::vector<Matrix> comp;
  comp.reserve(dim_out_);
  for (Index b = 0; b < dim_out_; ++b) {
    Matrix c(k, dim_in_);
    for (Index e = 0; e < k; ++e)
      for (Index a = 0; a < dim_in_; ++a) c(e, a) = kraus_[e](b, a);
    comp.push_back(std::move(c));
  }
  return KrausChannel(dim_in_, k, std::move(comp));
}

KrausChannel KrausChannel::conjugated(const HermitianOperator& x) const {
  if (x.dim() != dim_out_)
    throw DomainError("conjugated: operator dimension mismatch");
  if (min_eigenvalue(x) < -kStateTol * std::max(1.0, operator_norm(x.matrix())))
    throw DomainError("conjugated: operator is not PSD");
  std::vector<Matrix> scaled;
  scaled.reserve(kraus_.size());
  for (const auto& a : kraus_) scaled.push_back(x.matrix() * a);
  return KrausChannel(dim_in_, dim_out_, std::move(scaled));
}

KrausChannel KrausChannel::tensor(const KrausChannel& other) const {
  std::vector<Matrix> ops;
  ops.reserve(kraus_.size() * other.kraus_.size());
  for (const auto& a : kraus_)
    for (const auto& b : other.kraus_) ops.push_back(tensor_product(a, b));
  return KrausChannel(dim_in_ * other.dim_in_, dim_out_ * other.dim_out_,
                      std::move(ops));
}

KrausChannel KrausChannel::compose(const KrausChannel& other) const {
  if (other.dim_out_ != dim_in_)
    throw DomainError("compose: inner dimensions mismatch");
  std::vector<Matrix> ops;
  ops.reserve(kraus_.size() * other.kraus_.size());
  for (const auto& a : kraus_)
    for (const auto& b : other.kraus_) ops.push_back(a * b);
  return KrausChannel(other.dim_in_, dim_out_, std::move(ops));
}

KrausChannel KrausChannel::compressed(double tol) const {
  const Spectrum s = herm_eigendecompose(choi());
  const double lam_max = std::max(s.eigenvalues(s.eigenvalues.size() - 1), 0.0);
  std::vector<Matrix> ops;
  for (Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) <= tol * lam_max) continue;
    const double w = std::sqrt(s.eigenvalues(i));
    Matrix a(dim_out_, dim_in_);
    for (Index b = 0; b < dim_out_; ++b)
      for (Index j = 0; j < dim_in_; ++j)
        a(b, j) = w * s.eigenvectors(b * dim_in_ + j, i);
    ops.push_back(std::move(a));
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(dim_out_, dim_in_));
  return KrausChannel(dim_in_, dim_out_, std::move(ops));
}

EbVerdict is_eb_small(const KrausChannel& ch, double tol) {
  const HermitianOperator c = ch.choi();
  const Matrix pt = partial_transpose(c.matrix(), ch.dim_out(), ch.dim_in(), 1);
  const double lam_min =
      herm_eigenvalues(0.5 * (pt + pt.adjoint().eval()))(0);
  if (lam_min < -tol) return EbVerdict::no;
  return ch.dim_in() * ch.dim_out() <= 6 ? EbVerdict::yes : EbVerdict::inconclusive;
}

EbVerdict is_eb_interior(const KrausChannel& ch, double margin) {
  const HermitianOperator c = ch.choi();
  const RealVector choi_ev = herm_eigenvalues(c.matrix());
  const Matrix pt = partial_transpose(c.matrix(), ch.dim_out(), ch.dim_in(), 1);
  const double pt_min = herm_eigenvalues(0.5 * (pt + pt.adjoint().eval()))(0);
  const bool full_rank = choi_ev(0) > 1e-9 * choi_ev(choi_ev.size() - 1);
  if (pt_min <= margin || !full_rank) return EbVerdict::no;
  return ch.dim_in() == 2 && ch.dim_out() == 2 ? EbVerdict::yes
                                               : EbVerdict::inconclusive;
}

KrausChannel eb_from_measure_prepare(const Povm& povm,
                                     const std::vector<DensityMatrix>& outputs) {
  if (povm.size() != outputs.size())
    throw DomainError("eb_from_measure_prepare: POVM/output counts differ");
  const Index d_in = povm.dim();
  const Index d_out = outputs.front().dim();
  std::vector<Matrix> ops;
  for (std::size_t x = 0; x < povm.size(); ++x) {
    if (outputs[x].dim() != d_out)
      throw DomainError("eb_from_measure_prepare: output dimension mismatch");
    const Spectrum sm = herm_eigendecompose(povm.elements[x]);
    const Spectrum sn = herm_eigendecompose(outputs[x].op());
    const double m_cut = kSupportTol * std::max(sm.eigenvalues.maxCoeff(), 0.0);
    const double n_cut = kSupportTol * std::max(sn.eigenvalues.maxCoeff(), 0.0);
    for (Index i = 0; i < sm.eigenvalues.size(); ++i) {
      if (sm.eigenvalues(i) <= m_cut) continue;
      for (Index j = 0; j < sn.eigenvalues.size(); ++j) {
        if (sn.eigenvalues(j) <= n_cut) continue;
        const double w = std::sqrt(sm.eigenvalues(i) * sn.eigenvalues(j));
        ops.push_back(w * sn.eigenvectors.col(j) *
                      sm.eigenvectors.col(i).adjoint());
      }
    }
  }
  return KrausChannel(d_in, d_out, std::move(ops));
}

KrausChannel depolarizing(Index d, double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("depolarizing: p outside [0, 1]");
  std::vector<Matrix> ops;
  ops.reserve(d * d);
  // Weyl set X^a Z^b; the identity component absorbs the (1 - p) part.
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      const double w = (a == 0 && b == 0)
                           ? std::sqrt(1.0 - p + p / static_cast<double>(d * d))
                           : std::sqrt(p / static_cast<double>(d * d));
      Matrix op = Matrix::Zero(d, d);
      for (Index j = 0; j < d; ++j)
        op((j + a) % d, j) =
            w * std::exp(Complex(0.0, 2.0 * M_PI * static_cast<double>(b * j) /
                                          static_cast<double>(d)));
      ops.push_back(std::move(op));
    }
  return KrausChannel(d, d, std::move(ops));
}

KrausChannel smooth_hadamard(const KrausChannel& nh, double p) {
  if (!nh.is_trace_preserving())
    throw DomainError("smooth_hadamard: channel is not trace-preserving");
  if (p < 0.0 || p > 1.0) throw DomainError("smooth_hadamard: p outside [0, 1]");
  const auto& a_ops = nh.kraus();
  const Index env = static_cast<Index>(a_ops.size());
  const Index d_in = nh.dim_in();
  const Index d_b = nh.dim_out();
  const KrausChannel dep = depolarizing(env, p);
  const Index f = static_cast<Index>(dep.kraus().size());  // |F| = |E|^2

  // K_e = sum_{x,k} <e| D_k |x> A_x (x) |k>_F, one Kraus operator per
  // environment basis vector of the dilated pair.
  std::vector<Matrix> ops;
  ops.reserve(env);
  for (Index e = 0; e < env; ++e) {
    Matrix k_e = Matrix::Zero(d_b * f, d_in);
    for (Index k = 0; k < f; ++k) {
      const Matrix& dk = dep.kraus()[k];
      for (Index x = 0; x < env; ++x) {
        const Complex c = dk(e, x);
        if (c == Complex(0.0, 0.0)) continue;
        for (Index b = 0; b < d_b; ++b)
          for (Index a = 0; a < d_in; ++a) k_e(b * f + k, a) += c * a_ops[x](b, a);
      }
    }
    ops.push_back(std::move(k_e));
  }
  return KrausChannel(d_in, d_b * f, std::move(ops));
}

KrausChannel pinching(const Matrix& basis) {
  const Index d = basis.rows();
  if (basis.cols() != d ||
      operator_norm(basis.adjoint() * basis - Matrix::Identity(d, d)) > kTpTol)
    throw DomainError("pinching: basis is not unitary");
  std::vector<Matrix> ops;
  ops.reserve(d);
  for (Index x = 0; x < d; ++x)
    ops.push_back(basis.col(x) * basis.col(x).adjoint());
  return KrausChannel(d, d, std::move(ops));
}

Povm ic_povm(Index d, std::uint64_t seed) {
  if (d < 2) throw DomainError("ic_povm: dimension must be at least 2");
  for (int attempt = 0; attempt < 10; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<Vector> dirs;
    Matrix s = Matrix::Zero(d, d);
    for (Index k = 0; k < d * d; ++k) {
      Vector v = rng.gaussian_vector(d);
      v.normalize();
      s += v * v.adjoint();
      dirs.push_back(std::move(v));
    }
    const Matrix si =
        fractional_power(hermitian_unchecked(0.5 * (s + s.adjoint().eval())), -0.5)
            .matrix();
    std::vector<HermitianOperator> els;
    for (const auto& v : dirs) {
      const Vector w = si * v;
      els.push_back(hermitian_unchecked(w * w.adjoint()));
    }
    // Informational completeness: full-rank Gram matrix of the elements.
    Matrix gram(d * d, d * d);
    for (Index i = 0; i < d * d; ++i)
      for (Index j = 0; j < d * d; ++j)
        gram(i, j) = (els[i].matrix().adjoint() * els[j].matrix()).trace();
    const RealVector gev = herm_eigenvalues(0.5 * (gram + gram.adjoint().eval()));
    if (gev(0) <= 1e-8 * gev(gev.size() - 1)) continue;
    try {
      return Povm(std::move(els));
    } catch (const InvariantError&) {
      continue;
    }
  }
  throw InvariantError("ic_povm: rank-deficient after 10 resample attempts");
}

CqState make_cq_state(const Ensemble& ens, const KrausChannel& ch) {
  if (ens.state_dim() != ch.dim_in())
    throw DomainError("make_cq_state: ensemble/channel dimension mismatch");
  CqState cq;
  for (std::size_t x = 0; x < ens.size(); ++x) {
    cq.labels.push_back(static_cast<int>(x));
    cq.probs.push_back(ens.probs[x]);
    cq.conditionals.push_back(ch.apply(ens.states[x]));
  }
  return cq;
}

DensityMatrix random_pure(Index d, std::uint64_t seed) {
  Rng rng(seed);
  return DensityMatrix::pure(rng.gaussian_vector(d));
}

DensityMatrix random_density(Index d, Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > d) throw DomainError("random_density: invalid rank");
  Rng rng(seed);
  const Matrix a = rng.gaussian_matrix(d, rank);
  Matrix g = a * a.adjoint();
  g /= g.trace().real();
  return DensityMatrix(hermitian_unchecked(0.5 * (g + g.adjoint().eval())));
}

KrausChannel random_channel(Index d_in, Index d_out, int kraus_count,
                            std::uint64_t seed) {
  if (kraus_count < 1) throw DomainError("random_channel: kraus_count must be >= 1");
  if (d_out * kraus_count < d_in)
    throw DomainError("random_channel: d_out * kraus_count below d_in");
  Rng rng(seed);
  const Matrix g = rng.gaussian_matrix(d_out * kraus_count, d_in);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = Matrix(qr.householderQ()).leftCols(d_in);
  std::vector<Matrix> ops;
  ops.reserve(kraus_count);
  for (int k = 0; k < kraus_count; ++k)
    ops.push_back(q.middleRows(static_cast<Index>(k) * d_out, d_out));
  return KrausChannel(d_in, d_out, std::move(ops));
}

Povm random_povm(Index d, int outcomes, std::uint64_t seed) {
  if (outcomes < 1) throw DomainError("random_povm: need at least one outcome");
  Rng rng(seed);
  std::vector<Matrix> raw;
  Matrix s = Matrix::Zero(d, d);
  for (int x = 0; x < outcomes; ++x) {
    const Matrix b = rng.gaussian_matrix(d, d);
    Matrix g = b * b.adjoint();
    raw.push_back(g);
    s += g;
  }
  const Matrix si =
      fractional_power(hermitian_unchecked(0.5 * (s + s.adjoint().eval())), -0.5)
          .matrix();
  std::vector<HermitianOperator> els;
  for (const auto& g : raw) {
    const Matrix e = si * g * si;
    els.push_back(hermitian_unchecked(0.5 * (e + e.adjoint().eval())));
  }
  return Povm(std::move(els));
}

}  // namespace renyicap
