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

#include "renyicap/divergences.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace renyicap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clipped_power_sum(const RealVector& ev, double alpha) {
  double sum = 0.0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0) sum += std::pow(ev(i), alpha);
  return sum;
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.adjoint().eval()); }

// Wirtinger gradient of Tr{S(psi)^alpha} with S = sum_k A_k psi psi^dag
// A_k^dag, namely 2 alpha sum_k A_k^dag S^(alpha-1) A_k psi.
Vector trace_power_gradient(const KrausChannel& map, double alpha,
                            const Vector& psi) {
  const Matrix s = map.apply_pure(psi);
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  if (s.rows() == 2 || s.rows() == 3)
    solver.computeDirect(s);
  else
    solver.compute(s);
  const RealVector& ev = solver.eigenvalues();
  const Matrix& v = solver.eigenvectors();
  Matrix s_pow = Matrix::Zero(s.rows(), s.cols());
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0)
      s_pow += std::pow(ev(i), alpha - 1.0) * v.col(i) * v.col(i).adjoint();
  Vector g = Vector::Zero(psi.size());
  for (const auto& a : map.kraus()) g.noalias() += a.adjoint() * (s_pow * (a * psi));
  return Vector(2.0 * alpha * g);
}

// log2(2^a + 2^b) without overflow.
double log2_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log2(std::exp2(a - m) + std::exp2(b - m));
}

}  // namespace

DivergenceValue sandwiched_q(const HermitianOperator& a, const HermitianOperator& b,
                             double alpha, double support_tol) {
  if (alpha <= 1.0)
    throw DomainError("sandwiched_q: alpha must be greater than 1");
  if (!support_contained(a, b, support_tol)) return DivergenceValue::infinite();
  const HermitianOperator x =
      fractional_power(b, (1.0 - alpha) / (2.0 * alpha), support_tol);
  const Matrix inner = symmetrized(x.matrix() * a.matrix() * x.matrix());
  const double q = clipped_power_sum(herm_eigenvalues(inner), alpha);
  return DivergenceValue::finite(q);
}

DivergenceValue sandwiched_d(const HermitianOperator& a, const HermitianOperator& b,
                             double alpha, double support_tol) {
  const DivergenceValue q = sandwiched_q(a, b, alpha, support_tol);
  if (!q.support_ok) return q;
  return DivergenceValue::finite(std::log2(q.value) / (alpha - 1.0));
}

DivergenceValue renyi_d(const HermitianOperator& a, const HermitianOperator& b,
                        double alpha, double support_tol) {
  if (alpha <= 1.0) throw DomainError("renyi_d: alpha must be greater than 1");
  return renyi_d_extended(a, b, alpha, support_tol);
}

DivergenceValue renyi_d_extended(const HermitianOperator& a,
                                 const HermitianOperator& b, double alpha,
                                 double support_tol) {
  if (alpha <= 0.0 || alpha == 1.0)
    throw DomainError("renyi_d_extended: alpha must lie in (0,1) or (1,inf)");
  if (alpha > 1.0 && !support_contained(a, b, support_tol))
    return DivergenceValue::infinite();
  const HermitianOperator a_pow = fractional_power(a, alpha, support_tol);
  const HermitianOperator b_pow = fractional_power(b, 1.0 - alpha, support_tol);
  const double tr = (a_pow.matrix() * b_pow.matrix()).trace().real();
  if (!(tr > 0.0)) return DivergenceValue::infinite();
  return DivergenceValue::finite(std::log2(tr) / (alpha - 1.0));
}

DivergenceValue vn_relative_entropy(const HermitianOperator& a,
                                    const HermitianOperator& b,
                                    double support_tol) {
  if (!support_contained(a, b, support_tol)) return DivergenceValue::infinite();
  const Spectrum sa = herm_eigendecompose(a);
  const double a_cut =
      support_tol * std::max(sa.eigenvalues(sa.eigenvalues.size() - 1), 0.0);
  double term_a = 0.0;
  for (Index i = 0; i < sa.eigenvalues.size(); ++i)
    if (sa.eigenvalues(i) > a_cut)
      term_a += sa.eigenvalues(i) * std::log2(sa.eigenvalues(i));

  const Spectrum sb = herm_eigendecompose(b);
  const double b_cut =
      support_tol * std::max(sb.eigenvalues(sb.eigenvalues.size() - 1), 0.0);
  Matrix log_b = Matrix::Zero(b.dim(), b.dim());
  for (Index i = 0; i < sb.eigenvalues.size(); ++i)
    if (sb.eigenvalues(i) > b_cut)
      log_b += std::log2(sb.eigenvalues(i)) * sb.eigenvectors.col(i) *
               sb.eigenvectors.col(i).adjoint();
  const double term_b = (a.matrix() * log_b).trace().real();
  return DivergenceValue::finite(term_a - term_b);
}

DivergenceValue classical_renyi(const std::vector<double>& p,
                                const std::vector<double>& q, double alpha) {
  if (alpha <= 0.0 || alpha == 1.0)
    throw DomainError("classical_renyi: alpha must lie in (0,1) or (1,inf)");
  if (p.size() != q.size())
    throw DomainError("classical_renyi: length mismatch");
  double sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0)
      throw DomainError("classical_renyi: negative probability");
    sp += p[i];
    sq += q[i];
  }
  if (std::abs(sp - 1.0) > 1e-10 || std::abs(sq - 1.0) > 1e-10)
    throw DomainError("classical_renyi: probabilities do not sum to one");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return DivergenceValue::infinite();
    sum += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  if (!(sum > 0.0)) return DivergenceValue::infinite();
  return DivergenceValue::finite(std::log2(sum) / (alpha - 1.0));
}

double binary_cq_divergence(double eps, int n, double rate, double alpha) {
  if (alpha <= 1.0)
    throw DomainError("binary_cq_divergence: alpha must be greater than 1");
  if (n < 1) throw DomainError("binary_cq_divergence: n must be >= 1");
  if (eps < 0.0 || eps > 1.0)
    throw DomainError("binary_cq_divergence: eps outside [0, 1]");
  const double log2_q = -static_cast<double>(n) * rate;  // log2 of 2^(-nR)
  const double q = std::exp2(log2_q);
  if (eps > 1.0 - q + 1e-15)
    throw DomainError("binary_cq_divergence: requires eps <= 1 - 2^(-nR)");
  // Stable evaluation through log2 space: the second term alone can reach
  // 2^(nR(alpha-1)).
  const double t1 = eps > 0.0
                        ? alpha * std::log2(eps) + (1.0 - alpha) * std::log2(1.0 - q)
                        : -kInf;
  const double t2 = alpha * std::log2(1.0 - eps) + (1.0 - alpha) * log2_q;
  return log2_add_exp(t1, t2) / (alpha - 1.0);
}

double sandwiched_alpha_norm(const Matrix& a, const HermitianOperator& x,
                             double alpha) {
  if (a.rows() != x.dim() || a.cols() != x.dim())
    throw DomainError("sandwiched_alpha_norm: dimension mismatch");
  const Matrix xr = fractional_power(x, 0.5).matrix();
  return schatten_norm(xr * a * xr, alpha);
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
  if (alpha <= 0.0) throw DomainError("renyi_entropy: alpha must be positive");
  const RealVector ev = herm_eigenvalues(rho.matrix());
  if (alpha == 1.0) {
    double h = 0.0;
    for (Index i = 0; i < ev.size(); ++i)
      if (ev(i) > 0.0) h -= ev(i) * std::log2(ev(i));
    return h;
  }
  return std::log2(clipped_power_sum(ev, alpha)) / (1.0 - alpha);
}

OutputOptResult max_output_alpha_norm(const KrausChannel& map, double alpha,
                                      const OptimizerConfig& cfg) {
  if (alpha < 1.0)
    throw DomainError("max_output_alpha_norm: alpha must be >= 1");
  cfg.validate();
  opt::SphereAscentOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.grad_tol = cfg.inner_tol;
  if (std::isinf(alpha)) {
    auto objective = [&](const Vector& psi) {
      const RealVector ev = herm_eigenvalues(map.apply_pure(psi));
      return ev(ev.size() - 1);
    };
    const opt::MultistartResult best = opt::multistart_sphere_max(
        objective, map.dim_in(), cfg.restarts, cfg.seed, opts);
    return OutputOptResult{best.value, best.arg, best.restarts_used,
                           best.converged};
  }
  // Ascend the monotone transform Tr{S^alpha}, which has a closed-form
  // gradient, and take the root at the end.
  auto trace_power = [&](const Vector& psi) {
    return clipped_power_sum(herm_eigenvalues(map.apply_pure(psi)), alpha);
  };
  auto gradient = [&](const Vector& psi) {
    return trace_power_gradient(map, alpha, psi);
  };
  const opt::MultistartResult best = opt::multistart_sphere_max(
      trace_power, map.dim_in(), cfg.restarts, cfg.seed, opts, {}, gradient);
  return OutputOptResult{std::pow(best.value, 1.0 / alpha), best.arg,
                         best.restarts_used, best.converged};
}

OutputOptResult min_output_renyi(const KrausChannel& ch, double alpha,
                                 const OptimizerConfig& cfg) {
  if (alpha < 1.0) throw DomainError("min_output_renyi: alpha must be >= 1");
  if (!ch.is_trace_preserving())
    throw DomainError("min_output_renyi: channel must be trace-preserving");
  cfg.validate();
  auto trace_power = [&](const Vector& psi) {
    return clipped_power_sum(herm_eigenvalues(ch.apply_pure(psi)), alpha);
  };
  auto gradient = [&](const Vector& psi) {
    return trace_power_gradient(ch, alpha, psi);
  };
  opt::SphereAscentOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.grad_tol = cfg.inner_tol;
  const opt::MultistartResult best = opt::multistart_sphere_max(
      trace_power, ch.dim_in(), cfg.restarts, cfg.seed, opts, {}, gradient);
  const double h_min = std::log2(best.value) / (1.0 - alpha);

  // Cross-check against the independent output-norm optimizer through
  // H_alpha^min = (alpha/(1-alpha)) log2 nu_alpha.
  const OutputOptResult nu = max_output_alpha_norm(ch, alpha, cfg);
  const double via_norm = alpha / (1.0 - alpha) * std::log2(nu.value);
  if (std::abs(h_min - via_norm) > 1e-8)
    throw InvariantError(
        "min_output_renyi: output-norm identity violated by " +
        std::to_string(h_min - via_norm));
  return OutputOptResult{h_min, best.arg, best.restarts_used, best.converged};
}

}  // namespace renyicap
