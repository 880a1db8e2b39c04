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

#include "renyicap/capacity.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "renyicap/parallel.hpp"
#include "renyicap/rng.hpp"

namespace renyicap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void sym_eig(const Matrix& herm, RealVector& evals, Matrix& evecs) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  if (herm.rows() == 2 || herm.rows() == 3)
    solver.computeDirect(herm);
  else
    solver.compute(herm);
  evals = solver.eigenvalues();
  evecs = solver.eigenvectors();
}

double clipped_power_sum(const RealVector& ev, double alpha) {
  double sum = 0.0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0) sum += std::pow(ev(i), alpha);
  return sum;
}

// Per-sigma cache: the sandwich operator (or the power / log of sigma) is
// computed once and reused across every inner-loop evaluation.
struct SigmaContext {
  DivergenceKind kind = DivergenceKind::sandwiched;
  double alpha = 2.0;
  double support_tol = kSupportTol;
  bool full_rank = true;
  Matrix op;
  Matrix off_supp;

  static SigmaContext make(const DensityMatrix& sigma, DivergenceKind kind,
                           double alpha, double support_tol = kSupportTol) {
    SigmaContext ctx;
    ctx.kind = kind;
    ctx.alpha = alpha;
    ctx.support_tol = support_tol;
    RealVector ev;
    Matrix v;
    sym_eig(sigma.matrix(), ev, v);
    const Index d = sigma.dim();
    const double cutoff = support_tol * std::max(ev(ev.size() - 1), 0.0);
    ctx.full_rank = ev(0) > cutoff;

    double expo = 0.0;
    if (kind == DivergenceKind::sandwiched) expo = (1.0 - alpha) / (2.0 * alpha);
    if (kind == DivergenceKind::traditional) expo = 1.0 - alpha;

    ctx.op = Matrix::Zero(d, d);
    Matrix proj = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
      if (ev(i) <= cutoff) continue;
      const double w = kind == DivergenceKind::von_neumann ? std::log2(ev(i))
                                                           : std::pow(ev(i), expo);
      ctx.op += w * v.col(i) * v.col(i).adjoint();
      proj += v.col(i) * v.col(i).adjoint();
    }
    if (!ctx.full_rank) ctx.off_supp = Matrix::Identity(d, d) - proj;
    return ctx;
  }

  bool escapes_support(const Matrix& out) const {
    if (full_rank) return false;
    const double leak = (off_supp * out).trace().real();
    const double scale = std::max(out.trace().real(), 1e-300);
    return leak > support_tol * scale;
  }

  // Trace quantity entering the ensemble sum (sandwiched or traditional).
  double q_of(const Matrix& out) const {
    if (escapes_support(out)) return kInf;
    if (kind == DivergenceKind::sandwiched) {
      Matrix s = op * out * op;
      s = 0.5 * (s + s.adjoint().eval());
      return clipped_power_sum(herm_eigenvalues(s), alpha);
    }
    RealVector ev;
    Matrix v;
    sym_eig(out, ev, v);
    Matrix powered = Matrix::Zero(out.rows(), out.cols());
    for (Index i = 0; i < ev.size(); ++i)
      if (ev(i) > 0.0)
        powered += std::pow(ev(i), alpha) * v.col(i) * v.col(i).adjoint();
    return (powered * op).trace().real();
  }

  // Divergence in bits of a PSD output against sigma.
  double divergence(const Matrix& out) const {
    if (kind == DivergenceKind::von_neumann) {
      if (escapes_support(out)) return kInf;
      const RealVector ev = herm_eigenvalues(out);
      double term_a = 0.0;
      for (Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0.0) term_a += ev(i) * std::log2(ev(i));
      return term_a - (out * op).trace().real();
    }
    const double q = q_of(out);
    if (!std::isfinite(q)) return kInf;
    if (!(q > 0.0)) return -kInf;
    return std::log2(q) / (alpha - 1.0);
  }
};

void require_alpha_window(DivergenceKind kind, double alpha, const char* where) {
  if (kind == DivergenceKind::von_neumann) return;
  if (alpha <= 1.0 || alpha > 2.0)
    throw DomainError(std::string(where) + ": alpha must lie in (1, 2]");
}

// Inner maximization of the divergence over pure inputs at a fixed sigma.
// On the sandwiched path with a full-rank sigma the ascent uses the exact
// gradient 2a/(ln2 (a-1) Tr S^a) sum_k B_k^dag S^(a-1) B_k psi with
// B_k = X A_k and S the sandwiched output.
opt::MultistartResult inner_max(const KrausChannel& ch, const SigmaContext& ctx,
                                int restarts, std::uint64_t seed,
                                const std::vector<Vector>& warm,
                                const OptimizerConfig& cfg) {
  opt::SphereAscentOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.grad_tol = cfg.inner_tol;

  if (ctx.kind == DivergenceKind::sandwiched && ctx.full_rank) {
    std::vector<Matrix> sandwiched_kraus;
    sandwiched_kraus.reserve(ch.kraus().size());
    for (const auto& a : ch.kraus()) sandwiched_kraus.push_back(ctx.op * a);
    const double alpha = ctx.alpha;
    const Index d_out = ch.dim_out();

    auto build_s = [sandwiched_kraus, d_out](const Vector& psi) {
      Matrix s = Matrix::Zero(d_out, d_out);
      for (const auto& b : sandwiched_kraus) {
        const Vector w = b * psi;
        s.noalias() += w * w.adjoint();
      }
      return s;
    };
    auto objective = [build_s, alpha](const Vector& psi) {
      const double q = clipped_power_sum(herm_eigenvalues(build_s(psi)), alpha);
      if (!(q > 0.0)) return -kInf;
      return std::log2(q) / (alpha - 1.0);
    };
    auto gradient = [build_s, &sandwiched_kraus, alpha](const Vector& psi) {
      const Matrix s = build_s(psi);
      RealVector ev;
      Matrix v;
      sym_eig(s, ev, v);
      Matrix s_pow = Matrix::Zero(s.rows(), s.cols());
      double q = 0.0;
      for (Index i = 0; i < ev.size(); ++i) {
        if (ev(i) <= 0.0) continue;
        q += std::pow(ev(i), alpha);
        s_pow += std::pow(ev(i), alpha - 1.0) * v.col(i) * v.col(i).adjoint();
      }
      Vector g = Vector::Zero(psi.size());
      if (!(q > 0.0)) return g;
      for (const auto& b : sandwiched_kraus) g.noalias() += b.adjoint() * (s_pow * (b * psi));
      const double scale = 2.0 * alpha / ((alpha - 1.0) * std::log(2.0) * q);
      return Vector(scale * g);
    };
    return opt::multistart_sphere_max(objective, ch.dim_in(), restarts, seed,
                                      opts, warm, gradient);
  }

  auto objective = [&](const Vector& psi) {
    return ctx.divergence(ch.apply_pure(psi));
  };
  return opt::multistart_sphere_max(objective, ch.dim_in(), restarts, seed, opts,
                                    warm);
}

std::vector<DensityMatrix> sigma_candidates(const KrausChannel& ch,
                                            std::uint64_t seed) {
  std::vector<DensityMatrix> cands;
  if (ch.is_trace_preserving())
    cands.push_back(ch.apply(DensityMatrix::maximally_mixed(ch.dim_in())));
  cands.push_back(DensityMatrix::maximally_mixed(ch.dim_out()));
  cands.push_back(random_density(ch.dim_out(), ch.dim_out(), derive_seed(seed, 901)));
  return cands;
}

// Minimax by a cutting-plane scheme: a growing active set of certified
// worst-case inputs turns the outer problem into the minimization of a
// noise-free maximum over finitely many convex functions of sigma, which
// the derivative-free simplex search handles reliably. The thorough inner
// maximization acts as the separation oracle.
RadiusResult minimax_radius(const KrausChannel& ch, DivergenceKind kind,
                            double alpha, const OptimizerConfig& cfg) {
  cfg.validate();
  if (!ch.is_trace_preserving())
    throw DomainError("info_radius: channel must be trace-preserving");

  std::vector<Vector> cut_states;
  std::vector<Matrix> cut_outputs;

  auto max_over_cuts = [&](const Eigen::VectorXd& x) {
    DensityMatrix sigma = DensityMatrix::maximally_mixed(ch.dim_out());
    try {
      sigma = opt::state_from_params(x, ch.dim_out());
    } catch (const std::exception&) {
      return kInf;
    }
    const SigmaContext ctx = SigmaContext::make(sigma, kind, alpha);
    double worst = -kInf;
    for (const auto& out : cut_outputs)
      worst = std::max(worst, ctx.divergence(out));
    return worst;
  };

  opt::NelderMeadOptions nm;
  nm.max_iters = cfg.max_iters;
  nm.f_tol = cfg.outer_tol * 1e-3;
  nm.x_tol = 1e-8;

  DensityMatrix sigma = ch.apply(DensityMatrix::maximally_mixed(ch.dim_in()));
  Eigen::VectorXd sigma_x = opt::params_from_state(sigma);
  const int max_rounds = 60;
  const double cut_tol = std::max(1e-8, cfg.outer_tol * 0.1);
  bool converged = false;
  double plane_value = kInf;

  for (int round = 0; round < max_rounds; ++round) {
    const SigmaContext ctx = SigmaContext::make(sigma, kind, alpha);
    const opt::MultistartResult oracle =
        inner_max(ch, ctx, cfg.restarts, derive_seed(cfg.seed, 13 + round),
                  cut_states, cfg);
    if (!std::isfinite(oracle.value)) break;

    double active = -kInf;
    for (const auto& out : cut_outputs)
      active = std::max(active, ctx.divergence(out));
    if (round > 0 && oracle.value <= active + cut_tol) {
      converged = true;
      break;
    }

    bool fresh = true;
    for (const auto& s : cut_states)
      if (std::norm(s.dot(oracle.arg)) > 1.0 - 1e-10) fresh = false;
    if (fresh) {
      cut_states.push_back(oracle.arg.normalized());
      cut_outputs.push_back(ch.apply_pure(cut_states.back()));
    }

    // Noise-free outer step: minimize the max over the active set.
    opt::NelderMeadResult step = opt::nelder_mead_minimize(max_over_cuts, sigma_x, nm);
    for (int retry = 0; retry < 2 && !step.converged; ++retry)
      step = opt::nelder_mead_minimize(max_over_cuts, step.x, nm);
    sigma_x = step.x;
    plane_value = step.value;
    sigma = opt::state_from_params(sigma_x, ch.dim_out());
  }

  // Certify the inner maximum at the cutting-plane optimum and at the
  // fallback candidates; keep the smallest so the report never exceeds a
  // candidate's certified radius.
  std::vector<DensityMatrix> finals{sigma};
  for (const auto& c : sigma_candidates(ch, cfg.seed)) finals.push_back(c);

  double best_value = kInf;
  std::size_t best_sigma = 0;
  opt::MultistartResult best_res;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const SigmaContext ctx = SigmaContext::make(finals[i], kind, alpha);
    const opt::MultistartResult res = inner_max(
        ch, ctx, cfg.restarts, derive_seed(cfg.seed, 13), cut_states, cfg);
    if (res.value < best_value) {
      best_value = res.value;
      best_sigma = i;
      best_res = res;
    }
  }
  return RadiusResult{best_value,
                      finals[best_sigma],
                      best_res.arg.size() > 0
                          ? DensityMatrix::pure(best_res.arg)
                          : DensityMatrix::maximally_mixed(ch.dim_in()),
                      cfg.restarts,
                      converged && best_res.converged,
                      std::abs(best_value - plane_value) + cfg.outer_tol};
}

double ensemble_value(const std::vector<Matrix>& outputs,
                      const std::vector<double>& probs, const SigmaContext& ctx) {
  if (ctx.kind == DivergenceKind::von_neumann) {
    double acc = 0.0;
    for (std::size_t x = 0; x < outputs.size(); ++x) {
      if (probs[x] <= 0.0) continue;
      const double d = ctx.divergence(outputs[x]);
      if (!std::isfinite(d)) return kInf;
      acc += probs[x] * d;
    }
    return acc;
  }
  double acc = 0.0;
  for (std::size_t x = 0; x < outputs.size(); ++x) {
    if (probs[x] <= 0.0) continue;
    const double q = ctx.q_of(outputs[x]);
    if (!std::isfinite(q)) return kInf;
    acc += probs[x] * q;
  }
  if (!(acc > 0.0)) return kInf;
  return std::log2(acc) / (ctx.alpha - 1.0);
}

// Convex sigma minimization of the ensemble quantity by Nelder-Mead over
// the square-root parametrization, warm-startable through `starts_x`.
double ensemble_sigma_min(const std::vector<Matrix>& outputs,
                          const std::vector<double>& probs, DivergenceKind kind,
                          double alpha,
                          const std::vector<Eigen::VectorXd>& starts_x,
                          const OptimizerConfig& cfg, int max_iters,
                          Eigen::VectorXd* argmin = nullptr) {
  const Index d = outputs.front().rows();
  auto objective = [&](const Eigen::VectorXd& x) {
    try {
      const SigmaContext ctx =
          SigmaContext::make(opt::state_from_params(x, d), kind, alpha);
      return ensemble_value(outputs, probs, ctx);
    } catch (const std::exception&) {
      return kInf;
    }
  };
  opt::NelderMeadOptions nm;
  nm.max_iters = max_iters;
  nm.f_tol = cfg.outer_tol * 1e-2;
  nm.x_tol = 1e-7;
  double best = kInf;
  for (const auto& x0 : starts_x) {
    const opt::NelderMeadResult run = opt::nelder_mead_minimize(objective, x0, nm);
    if (run.value < best) {
      best = run.value;
      if (argmin) *argmin = run.x;
    }
  }
  return best;
}

DensityMatrix ensemble_average_output(const std::vector<Matrix>& outputs,
                                      const std::vector<double>& probs) {
  Matrix acc = Matrix::Zero(outputs.front().rows(), outputs.front().cols());
  for (std::size_t x = 0; x < outputs.size(); ++x) acc += probs[x] * outputs[x];
  return DensityMatrix(hermitian_unchecked(0.5 * (acc + acc.adjoint().eval())));
}

// Ensemble route by Frank-Wolfe over input measures. The functional
// mu -> min_sigma sum_x p(x) q(N(psi_x) || sigma) is concave (a pointwise
// minimum of linear functionals), so steepest-vertex steps with a line
// search converge globally and the duality gap certifies the result.
struct FwState {
  std::vector<Vector> states;
  std::vector<Matrix> outputs;
  std::vector<double> probs;
};

// Shrinks the support to `target` members by repeatedly merging the closest
// pair into its phase-aligned weighted centroid.
void reduce_support(FwState& fw, const KrausChannel& ch, std::size_t target) {
  while (fw.states.size() > target) {
    std::size_t bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < fw.states.size(); ++i)
      for (std::size_t j = i + 1; j < fw.states.size(); ++j) {
        const double fid = std::norm(fw.states[i].dot(fw.states[j]));
        if (fid > best) {
          best = fid;
          bi = i;
          bj = j;
        }
      }
    const Complex overlap = fw.states[bi].dot(fw.states[bj]);
    const Complex phase = std::abs(overlap) > 1e-12
                              ? std::conj(overlap) / std::abs(overlap)
                              : Complex(1.0);
    Vector merged = fw.probs[bi] * fw.states[bi] +
                    fw.probs[bj] * (phase * fw.states[bj]);
    if (merged.norm() < 1e-12) merged = fw.states[bi];
    merged.normalize();
    fw.states[bi] = merged;
    fw.outputs[bi] = ch.apply_pure(merged);
    fw.probs[bi] += fw.probs[bj];
    fw.states.erase(fw.states.begin() + bj);
    fw.outputs.erase(fw.outputs.begin() + bj);
    fw.probs.erase(fw.probs.begin() + bj);
  }
}

double fw_objective(const FwState& fw, DivergenceKind kind, double alpha,
                    const OptimizerConfig& cfg, Eigen::VectorXd* warm_sigma,
                    int sigma_iters) {
  if (kind == DivergenceKind::von_neumann) {
    const DensityMatrix avg = ensemble_average_output(fw.outputs, fw.probs);
    const SigmaContext ctx = SigmaContext::make(avg, kind, alpha);
    return ensemble_value(fw.outputs, fw.probs, ctx);
  }
  std::vector<Eigen::VectorXd> starts;
  if (warm_sigma && warm_sigma->size() > 0) starts.push_back(*warm_sigma);
  starts.push_back(
      opt::params_from_state(ensemble_average_output(fw.outputs, fw.probs)));
  Eigen::VectorXd argmin;
  const double v = ensemble_sigma_min(fw.outputs, fw.probs, kind, alpha, starts,
                                      cfg, sigma_iters, &argmin);
  if (warm_sigma && argmin.size() > 0) *warm_sigma = argmin;
  return v;
}

double ensemble_maximize(const KrausChannel& ch, DivergenceKind kind, double alpha,
                         const OptimizerConfig& cfg) {
  cfg.validate();
  if (!ch.is_trace_preserving())
    throw DomainError("alpha_holevo: channel must be trace-preserving");
  const Index d_in = ch.dim_in();
  const std::size_t cap = static_cast<std::size_t>(d_in * d_in);

  FwState fw;
  {
    const SigmaContext ctx0 = SigmaContext::make(
        ch.apply(DensityMatrix::maximally_mixed(d_in)), kind, alpha);
    const opt::MultistartResult first = inner_max(
        ch, ctx0, std::max(8, cfg.restarts), derive_seed(cfg.seed, 301), {}, cfg);
    fw.states.push_back(first.arg.normalized());
    fw.outputs.push_back(ch.apply_pure(fw.states.back()));
    fw.probs.push_back(1.0);
  }

  Eigen::VectorXd warm_sigma;
  const int dir_restarts = std::max(6, cfg.restarts / 2);
  const int max_fw_iters = 60;
  const double gap_tol = 3e-5;

  double value = -kInf;
  for (int iter = 0; iter < max_fw_iters; ++iter) {
    value = fw_objective(fw, kind, alpha, cfg, &warm_sigma, 260);

    // Direction: the input whose output is farthest from the current
    // sigma, i.e. the maximizer of the linearized functional.
    DensityMatrix sigma_now = DensityMatrix::maximally_mixed(ch.dim_out());
    if (kind == DivergenceKind::von_neumann) {
      sigma_now = ensemble_average_output(fw.outputs, fw.probs);
    } else if (warm_sigma.size() > 0) {
      sigma_now = opt::state_from_params(warm_sigma, ch.dim_out());
    }
    const SigmaContext ctx = SigmaContext::make(sigma_now, kind, alpha);
    opt::MultistartResult dir =
        inner_max(ch, ctx, dir_restarts, derive_seed(cfg.seed, 500 + iter),
                  fw.states, cfg);

    // Duality gap in bits: max_psi against the current sigma bounds the
    // optimum from above, the current mixture value bounds it from below.
    // A near-zero gap is only trusted after a heavier confirmation search.
    if (dir.value - value <= gap_tol) {
      const opt::MultistartResult confirm =
          inner_max(ch, ctx, 3 * dir_restarts,
                    derive_seed(cfg.seed, 90000 + iter), fw.states, cfg);
      if (confirm.value > dir.value) dir = confirm;
      if (dir.value - value <= gap_tol) break;
    }

    FwState trial = fw;
    const Vector new_state = dir.arg.normalized();
    const std::size_t old_size = trial.states.size();
    std::size_t vertex = old_size;
    double best_fid = 0.0;
    for (std::size_t x = 0; x < old_size; ++x) {
      const double fid = std::norm(trial.states[x].dot(new_state));
      if (fid > 1.0 - 1e-7 && fid > best_fid) {
        best_fid = fid;
        vertex = x;
      }
    }
    if (vertex == old_size) {
      trial.states.push_back(new_state);
      trial.outputs.push_back(ch.apply_pure(new_state));
      trial.probs.push_back(0.0);
    }

    // When the Carathéodory cap is full (or the vertex already sits in the
    // support), take a pairwise step that shifts weight from the least
    // useful support member toward the vertex; otherwise a classic mixture
    // step toward the new vertex. Both line searches ride a concave slice.
    bool pairwise = vertex < old_size || old_size >= cap;
    std::size_t worst = vertex;
    if (pairwise) {
      double worst_q = kInf;
      for (std::size_t x = 0; x < trial.states.size(); ++x) {
        if (x == vertex || trial.probs[x] <= 0.0) continue;
        const double qx = ctx.divergence(trial.outputs[x]);
        if (qx < worst_q) {
          worst_q = qx;
          worst = x;
        }
      }
      if (worst == vertex) pairwise = false;
    }

    const double gamma_max = pairwise ? trial.probs[worst] : 1.0;
    auto apply_gamma = [&](FwState& pt, double gamma) {
      if (pairwise) {
        for (std::size_t x = 0; x < pt.probs.size(); ++x)
          pt.probs[x] = trial.probs[x];
        pt.probs[worst] -= gamma;
        pt.probs[vertex] += gamma;
      } else {
        for (std::size_t x = 0; x < pt.probs.size(); ++x)
          pt.probs[x] = trial.probs[x] * (1.0 - gamma);
        pt.probs[vertex] += gamma;
      }
    };
    auto mix_value = [&](double gamma) {
      FwState pt = trial;
      apply_gamma(pt, gamma);
      Eigen::VectorXd ws = warm_sigma;
      return fw_objective(pt, kind, alpha, cfg, &ws, 140);
    };

    double lo = 0.0, hi = gamma_max;
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double g1 = hi - golden * (hi - lo), g2 = lo + golden * (hi - lo);
    double f1 = mix_value(g1), f2 = mix_value(g2);
    for (int i = 0; i < 14; ++i) {
      if (f1 < f2) {
        lo = g1;
        g1 = g2;
        f1 = f2;
        g2 = lo + golden * (hi - lo);
        f2 = mix_value(g2);
      } else {
        hi = g2;
        g2 = g1;
        f2 = f1;
        g1 = hi - golden * (hi - lo);
        f1 = mix_value(g1);
      }
    }
    double gamma = 0.5 * (lo + hi);
    // Snap to the boundary so an exhausted donor actually leaves the support.
    if (pairwise && gamma > gamma_max * (1.0 - 1e-6)) gamma = gamma_max;
    apply_gamma(trial, gamma);
    fw = std::move(trial);

    // Drop negligible members, keep the working support tight, renormalize.
    for (std::size_t x = fw.probs.size(); x-- > 0;) {
      if (fw.probs[x] < 1e-7 && fw.probs.size() > 1) {
        fw.states.erase(fw.states.begin() + x);
        fw.outputs.erase(fw.outputs.begin() + x);
        fw.probs.erase(fw.probs.begin() + x);
      }
    }
    reduce_support(fw, ch, 3 * cap);
    double total = 0.0;
    for (double p : fw.probs) total += p;
    for (double& p : fw.probs) p /= total;
  }

  // Carathéodory cap on the returned mixture, then a local polish of the
  // capped ensemble (member states and weights jointly).
  reduce_support(fw, ch, cap);

  auto capped_value = [&](const FwState& state, int iters) {
    Eigen::VectorXd ws = warm_sigma;
    return fw_objective(state, kind, alpha, cfg, &ws, iters);
  };
  double best = capped_value(fw, cfg.max_iters);

  const Index d_in_i = ch.dim_in();
  const std::size_t members = fw.states.size();
  const std::size_t n_params = members * (2 * static_cast<std::size_t>(d_in_i) + 1);
  Eigen::VectorXd x0(n_params);
  std::size_t pos = 0;
  for (const auto& psi : fw.states)
    for (Index i = 0; i < d_in_i; ++i) {
      x0(pos++) = psi(i).real();
      x0(pos++) = psi(i).imag();
    }
  for (double p : fw.probs) x0(pos++) = std::log(std::max(p, 1e-9));

  Eigen::VectorXd polish_sigma = warm_sigma;
  auto polish_objective = [&](const Eigen::VectorXd& x) {
    FwState pt;
    std::size_t at = 0;
    for (std::size_t m = 0; m < members; ++m) {
      Vector psi(d_in_i);
      for (Index i = 0; i < d_in_i; ++i) {
        psi(i) = Complex(x(at), x(at + 1));
        at += 2;
      }
      const double norm = psi.norm();
      if (norm < 1e-8) return kInf;
      psi /= norm;
      pt.states.push_back(psi);
      pt.outputs.push_back(ch.apply_pure(psi));
    }
    double mx = x(at);
    for (std::size_t m = 1; m < members; ++m) mx = std::max(mx, x(at + m));
    double total = 0.0;
    for (std::size_t m = 0; m < members; ++m) {
      pt.probs.push_back(std::exp(x(at + m) - mx));
      total += pt.probs.back();
    }
    for (double& p : pt.probs) p /= total;
    return -fw_objective(pt, kind, alpha, cfg, &polish_sigma, 160);
  };

  opt::NelderMeadOptions nm;
  nm.max_iters = static_cast<int>(70 * n_params);
  nm.f_tol = 1e-9;
  nm.x_tol = 1e-7;
  nm.init_step = 0.08;
  const opt::NelderMeadResult polished =
      opt::nelder_mead_minimize(polish_objective, x0, nm);

  if (polished.x.size() > 0) {
    FwState pt;
    std::size_t at = 0;
    bool ok = true;
    for (std::size_t m = 0; m < members && ok; ++m) {
      Vector psi(d_in_i);
      for (Index i = 0; i < d_in_i; ++i) {
        psi(i) = Complex(polished.x(at), polished.x(at + 1));
        at += 2;
      }
      if (psi.norm() < 1e-8) ok = false;
      if (ok) {
        psi.normalize();
        pt.states.push_back(psi);
        pt.outputs.push_back(ch.apply_pure(psi));
      }
    }
    if (ok) {
      double mx = polished.x(at);
      for (std::size_t m = 1; m < members; ++m)
        mx = std::max(mx, polished.x(at + m));
      double total = 0.0;
      for (std::size_t m = 0; m < members; ++m) {
        pt.probs.push_back(std::exp(polished.x(at + m) - mx));
        total += pt.probs.back();
      }
      for (double& p : pt.probs) p /= total;
      best = std::max(best, capped_value(pt, cfg.max_iters));
    }
  }
  return best;
}

}  // namespace

RadiusResult info_radius_around(const KrausChannel& ch, const DensityMatrix& sigma,
                                double alpha, const OptimizerConfig& cfg,
                                DivergenceKind kind) {
  cfg.validate();
  require_alpha_window(kind, alpha, "info_radius_around");
  if (!ch.is_trace_preserving())
    throw DomainError("info_radius_around: channel must be trace-preserving");
  if (sigma.dim() != ch.dim_out())
    throw DomainError("info_radius_around: sigma lives on the wrong space");
  const SigmaContext ctx = SigmaContext::make(sigma, kind, alpha);
  const opt::MultistartResult res =
      inner_max(ch, ctx, cfg.restarts, derive_seed(cfg.seed, 13), {}, cfg);
  return RadiusResult{res.value,
                      sigma,
                      res.arg.size() > 0 ? DensityMatrix::pure(res.arg)
                                         : DensityMatrix::maximally_mixed(ch.dim_in()),
                      res.restarts_used,
                      res.converged,
                      cfg.outer_tol};
}

RadiusResult info_radius(const KrausChannel& ch, double alpha,
                         const OptimizerConfig& cfg, DivergenceKind kind) {
  require_alpha_window(kind, alpha, "info_radius");
  return minimax_radius(ch, kind, alpha, cfg);
}

double alpha_holevo_of_ensemble(const Ensemble& ens, const KrausChannel& ch,
                                double alpha, const OptimizerConfig& cfg,
                                DivergenceKind kind) {
  cfg.validate();
  require_alpha_window(kind, alpha, "alpha_holevo_of_ensemble");
  if (ens.state_dim() != ch.dim_in())
    throw DomainError("alpha_holevo_of_ensemble: dimension mismatch");
  std::vector<Matrix> outputs;
  for (const auto& st : ens.states) outputs.push_back(ch.apply(st).matrix());
  if (kind == DivergenceKind::von_neumann) {
    const DensityMatrix avg = ensemble_average_output(outputs, ens.probs);
    return ensemble_value(outputs, ens.probs,
                          SigmaContext::make(avg, kind, alpha));
  }
  std::vector<Eigen::VectorXd> starts{
      opt::params_from_state(ensemble_average_output(outputs, ens.probs)),
      opt::params_from_state(DensityMatrix::maximally_mixed(ch.dim_out())),
      opt::params_from_state(
          random_density(ch.dim_out(), ch.dim_out(), derive_seed(cfg.seed, 555)))};
  return ensemble_sigma_min(outputs, ens.probs, kind, alpha, starts, cfg,
                            cfg.max_iters);
}

double alpha_holevo(const KrausChannel& ch, double alpha,
                    const OptimizerConfig& cfg) {
  require_alpha_window(DivergenceKind::sandwiched, alpha, "alpha_holevo");
  return ensemble_maximize(ch, DivergenceKind::sandwiched, alpha, cfg);
}

double generalized_holevo(const KrausChannel& ch, DivergenceKind kind,
                          double alpha, const OptimizerConfig& cfg) {
  require_alpha_window(kind, alpha, "generalized_holevo");
  return ensemble_maximize(ch, kind, alpha, cfg);
}

RadiusResult holevo_capacity(const KrausChannel& ch, const OptimizerConfig& cfg) {
  return minimax_radius(ch, DivergenceKind::von_neumann, 0.0, cfg);
}

double c_constant_at(const KrausChannel& ch, const DensityMatrix& sigma_star,
                     const OptimizerConfig& cfg) {
  cfg.validate();
  if (!ch.is_trace_preserving())
    throw DomainError("c_constant: channel must be trace-preserving");
  const SigmaContext ctx =
      SigmaContext::make(sigma_star, DivergenceKind::traditional, 1.5);
  auto objective = [&](const Vector& psi) {
    return ctx.divergence(ch.apply_pure(psi));
  };
  opt::SphereAscentOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.grad_tol = cfg.inner_tol;
  const opt::MultistartResult best = opt::multistart_sphere_max(
      objective, ch.dim_in(), cfg.restarts, derive_seed(cfg.seed, 35), opts);
  if (!std::isfinite(best.value)) return kInf;
  return std::exp2(0.5 * best.value) + 2.0;
}

double c_constant(const KrausChannel& ch, const OptimizerConfig& cfg) {
  const RadiusResult cap = holevo_capacity(ch, cfg);
  return c_constant_at(ch, cap.sigma_star, cfg);
}

double covariant_radius_bound(const KrausChannel& ch, double alpha,
                              const OptimizerConfig& cfg) {
  const OutputOptResult h_min = min_output_renyi(ch, alpha, cfg);
  return std::log2(static_cast<double>(ch.dim_out())) - h_min.value;
}

double subadditivity_gap(const KrausChannel& ch1, const KrausChannel& ch2,
                         double alpha, const OptimizerConfig& cfg) {
  require_alpha_window(DivergenceKind::sandwiched, alpha, "subadditivity_gap");
  const RadiusResult r1 = info_radius(ch1, alpha, cfg);
  const RadiusResult r2 = info_radius(ch2, alpha, cfg);

  const KrausChannel joint = ch1.tensor(ch2).compressed();
  const DensityMatrix sigma_joint =
      DensityMatrix(hermitian_unchecked(tensor_product(
          r1.sigma_star.matrix(), r2.sigma_star.matrix())));
  const SigmaContext ctx =
      SigmaContext::make(sigma_joint, DivergenceKind::sandwiched, alpha);

  // Entangled-input multistart, warm-started at the product of the
  // single-copy argmaxes.
  OptimizerConfig joint_cfg = cfg;
  joint_cfg.restarts = std::max(cfg.restarts, 50);
  Eigen::SelfAdjointEigenSolver<Matrix> e1(r1.worst_input.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> e2(r2.worst_input.matrix());
  const Vector v1 = e1.eigenvectors().col(r1.worst_input.dim() - 1);
  const Vector v2 = e2.eigenvectors().col(r2.worst_input.dim() - 1);
  Vector prod(joint.dim_in());
  for (Index i = 0; i < v1.size(); ++i)
    for (Index j = 0; j < v2.size(); ++j) prod(i * v2.size() + j) = v1(i) * v2(j);

  const opt::MultistartResult joint_max = inner_max(
      joint, ctx, joint_cfg.restarts, derive_seed(cfg.seed, 99), {prod}, joint_cfg);
  return joint_max.value - (r1.value + r2.value);
}

FixedSigmaGap fixed_sigma_subadditivity_gap(const KrausChannel& ch,
                                            const DensityMatrix& sigma,
                                            double alpha,
                                            const OptimizerConfig& cfg) {
  require_alpha_window(DivergenceKind::sandwiched, alpha,
                       "fixed_sigma_subadditivity_gap");
  const RadiusResult single = info_radius_around(ch, sigma, alpha, cfg);

  const KrausChannel joint = ch.tensor(ch).compressed();
  const DensityMatrix sigma_joint = DensityMatrix(
      hermitian_unchecked(tensor_product(sigma.matrix(), sigma.matrix())));
  const SigmaContext ctx =
      SigmaContext::make(sigma_joint, DivergenceKind::sandwiched, alpha);

  OptimizerConfig joint_cfg = cfg;
  joint_cfg.restarts = std::max(cfg.restarts, 50);
  Eigen::SelfAdjointEigenSolver<Matrix> es(single.worst_input.matrix());
  const Vector v = es.eigenvectors().col(single.worst_input.dim() - 1);
  Vector prod(joint.dim_in());
  for (Index i = 0; i < v.size(); ++i)
    for (Index j = 0; j < v.size(); ++j) prod(i * v.size() + j) = v(i) * v(j);

  const opt::MultistartResult joint_max =
      inner_max(joint, ctx, joint_cfg.restarts, derive_seed(cfg.seed, 98), {prod},
                joint_cfg);

  FixedSigmaGap out;
  out.gap = joint_max.value - 2.0 * single.value;
  out.complement_eb = is_eb_small(ch.complementary());
  return out;
}

}  // namespace renyicap
