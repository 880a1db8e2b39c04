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

#include "renyicap/optimize.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "renyicap/parallel.hpp"
#include "renyicap/rng.hpp"

namespace renyicap {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw DomainError("OptimizerConfig: restarts must be >= 1");
  if (inner_tol <= 0.0 || outer_tol <= 0.0)
    throw DomainError("OptimizerConfig: tolerances must be positive");
  if (max_iters < 1) throw DomainError("OptimizerConfig: max_iters must be >= 1");
}

namespace opt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x0, const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) {
    const double h = x0(i - 1) != 0.0 ? opts.init_step * std::abs(x0(i - 1))
                                      : opts.init_step;
    pts[i](i - 1) += h;
  }
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
  };

  int iters = 0;
  bool converged = false;
  for (; iters < opts.max_iters; ++iters) {
    sort_simplex();
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (std::isfinite(vals[best]) && std::isfinite(vals[worst])) {
      double spread = 0.0;
      for (int i = 1; i <= n; ++i)
        spread = std::max(spread, (pts[order[i]] - pts[best]).norm());
      if (vals[worst] - vals[best] <= opts.f_tol && spread <= opts.x_tol) {
        converged = true;
        break;
      }
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
    const double f_refl = f(refl);
    if (f_refl < vals[order[0]]) {
      const Eigen::VectorXd expd = centroid + 2.0 * (centroid - pts[worst]);
      const double f_expd = f(expd);
      if (f_expd < f_refl) {
        pts[worst] = expd;
        vals[worst] = f_expd;
      } else {
        pts[worst] = refl;
        vals[worst] = f_refl;
      }
      continue;
    }
    if (f_refl < vals[second]) {
      pts[worst] = refl;
      vals[worst] = f_refl;
      continue;
    }
    const Eigen::VectorXd contr = centroid + 0.5 * (pts[worst] - centroid);
    const double f_contr = f(contr);
    if (f_contr < vals[worst]) {
      pts[worst] = contr;
      vals[worst] = f_contr;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }
  sort_simplex();
  return NelderMeadResult{pts[order[0]], vals[order[0]], iters, converged};
}

SphereAscentResult maximize_on_sphere(const std::function<double(const Vector&)>& f,
                                      const Vector& psi0,
                                      const SphereAscentOptions& opts,
                                      const SphereGradient& grad) {
  const Index d = psi0.size();
  Vector psi = psi0.normalized();
  auto eval = [&](const Vector& v) {
    const double n = v.norm();
    return n > 0.0 ? f(v / n) : -kInf;
  };
  double value = eval(psi);
  if (!std::isfinite(value)) return SphereAscentResult{psi, value, 0, false};

  double step = opts.step_init;
  int iters = 0;
  bool converged = false;
  for (; iters < opts.max_iters; ++iters) {
    Vector g(d);
    if (grad) {
      g = grad(psi);
      // drop the radial component; the objective is scale invariant
      g -= psi * Complex(psi.dot(g).real(), 0.0);
    } else {
      for (Index k = 0; k < d; ++k) {
        Vector plus = psi, minus = psi;
        plus(k) += opts.fd_step;
        minus(k) -= opts.fd_step;
        const double d_re = (eval(plus) - eval(minus)) / (2.0 * opts.fd_step);
        plus = psi;
        minus = psi;
        plus(k) += Complex(0.0, opts.fd_step);
        minus(k) -= Complex(0.0, opts.fd_step);
        const double d_im = (eval(plus) - eval(minus)) / (2.0 * opts.fd_step);
        g(k) = Complex(d_re, d_im);
      }
    }
    const double gnorm = g.norm();
    if (gnorm <= opts.grad_tol) {
      converged = true;
      break;
    }

    bool improved = false;
    while (step > 1e-13) {
      const Vector trial = (psi + step * g).normalized();
      const double tv = eval(trial);
      if (tv > value + 1e-15) {
        psi = trial;
        value = tv;
        step = std::min(step * 1.6, 4.0);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      converged = true;
      break;
    }
  }
  return SphereAscentResult{psi, value, iters, converged};
}

MultistartResult multistart_sphere_max(
    const std::function<double(const Vector&)>& f, Index dim, int restarts,
    std::uint64_t seed, const SphereAscentOptions& opts,
    const std::vector<Vector>& warm_starts, const SphereGradient& grad) {
  std::vector<Vector> starts = warm_starts;
  for (int k = 0; k < restarts; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    starts.push_back(rng.gaussian_vector(dim).normalized());
  }

  std::vector<SphereAscentResult> results(starts.size());
  par::for_each_index(starts.size(), [&](std::size_t i) {
    results[i] = maximize_on_sphere(f, starts[i], opts, grad);
  });

  MultistartResult best;
  best.value = -kInf;
  best.restarts_used = restarts;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].value > best.value) {
      best.value = results[i].value;
      best.arg = results[i].psi;
      best.converged = results[i].converged;
    }
  }
  return best;
}

DensityMatrix state_from_params(const Eigen::VectorXd& x, Index dim) {
  if (x.size() != dim * dim)
    throw DomainError("state_from_params: expected dim^2 parameters");
  Matrix l = Matrix::Zero(dim, dim);
  Index pos = 0;
  for (Index i = 0; i < dim; ++i) l(i, i) = x(pos++);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < i; ++j) {
      l(i, j) = Complex(x(pos), x(pos + 1));
      pos += 2;
    }
  Matrix g = l * l.adjoint();
  const double tr = g.trace().real();
  if (!(tr > 1e-300))
    throw DomainError("state_from_params: zero-trace parametrization point");
  g /= tr;
  return DensityMatrix(hermitian_unchecked(0.5 * (g + g.adjoint().eval())));
}

Eigen::VectorXd params_from_state(const DensityMatrix& sigma) {
  const Index d = sigma.dim();
  // Small ridge keeps the factorization real-diagonal and well defined on
  // boundary states.
  Matrix m = sigma.matrix() + 1e-12 * Matrix::Identity(d, d);
  Eigen::LLT<Matrix> llt(m);
  Matrix l = llt.matrixL();
  Eigen::VectorXd x(d * d);
  Index pos = 0;
  for (Index i = 0; i < d; ++i) x(pos++) = l(i, i).real();
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < i; ++j) {
      x(pos++) = l(i, j).real();
      x(pos++) = l(i, j).imag();
    }
  return x;
}

}  // namespace opt
}  // namespace renyicap
