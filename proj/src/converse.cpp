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

#include "renyicap/converse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "renyicap/divergences.hpp"
#include "renyicap/parallel.hpp"
#include "renyicap/rng.hpp"

namespace renyicap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2Three = std::log2(3.0);
}  // namespace

CodeSpec::CodeSpec(int n_, double rate_, Ensemble ens, std::uint64_t seed_)
    : n(n_), rate(rate_), ensemble(std::move(ens)), seed(seed_) {
  if (n < 1) throw InvariantError("CodeSpec: n must be >= 1");
  const double count = std::round(std::exp2(static_cast<double>(n) * rate));
  if (count < 2.0 || count > 1e9)
    throw InvariantError("CodeSpec: message count out of range");
  message_count_ = static_cast<int>(count);
}

BoundReport generic_bound(int n, double rate, double chi_alpha_total,
                          double alpha) {
  if (alpha <= 1.0 || alpha > 2.0)
    throw DomainError("generic_bound: alpha must lie in (1, 2]");
  if (n < 1) throw DomainError("generic_bound: n must be >= 1");
  BoundReport rep;
  rep.n = n;
  rep.rate = rate;
  rep.alpha_used = alpha;
  const double raw =
      (alpha - 1.0) / alpha * (rate - chi_alpha_total / static_cast<double>(n));
  rep.components["raw_exponent"] = raw;
  rep.components["chi_alpha_total"] = chi_alpha_total;
  if (raw <= 0.0) {
    rep.vacuous = true;
    rep.exponent = 0.0;
    rep.p_succ_bound = 1.0;
  } else {
    rep.exponent = raw;
    rep.p_succ_bound = std::exp2(-static_cast<double>(n) * raw);
  }
  return rep;
}

GapCheck gap_inequality_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                              double alpha) {
  GapCheck out;
  const DivergenceValue d32 = renyi_d_extended(rho.op(), sigma.op(), 1.5);
  const DivergenceValue d12 = renyi_d_extended(rho.op(), sigma.op(), 0.5);
  if (!d32.support_ok || !d12.support_ok) {
    out.nu = kInf;
    out.lhs_traditional = kInf;
    out.lhs_sandwiched = kInf;
    out.vn = kInf;
    out.rhs = kInf;
    return out;
  }
  out.nu = std::exp2(0.5 * d32.value) + std::exp2(-0.5 * d12.value) + 1.0;
  out.alpha_window_max = 1.0 + kLog2Three / (4.0 * std::log2(out.nu));
  out.alpha_window_ok = alpha > 1.0 && alpha < out.alpha_window_max;
  out.lhs_traditional = renyi_d(rho.op(), sigma.op(), alpha).value;
  out.lhs_sandwiched = sandwiched_d(rho.op(), sigma.op(), alpha).value;
  out.vn = vn_relative_entropy(rho.op(), sigma.op()).value;
  const double l = std::log2(out.nu);
  out.rhs = out.vn + 4.0 * (alpha - 1.0) * l * l;
  return out;
}

double choose_alpha(double rate, double chi, double c) {
  if (!(rate > chi))
    throw DomainError("choose_alpha: strong-converse regime requires R > chi");
  if (!(c > 1.0)) throw DomainError("choose_alpha: requires c > 1");
  const double l = std::log2(c);
  const double m1 = kLog2Three / (4.0 * l);
  const double m2 = (rate - chi) / (8.0 * l * l);
  const double alpha = 1.0 + std::min({m1, m2, 1.0});
  const double guarantee = chi + (alpha - 1.0) * l * l;
  if (guarantee > 0.5 * (rate + chi) + 1e-12 * (1.0 + std::abs(rate)))
    throw InvariantError("choose_alpha: guarantee inequality violated");
  return alpha;
}

BoundReport eb_exponent_bound(const KrausChannel& ch, int n, double rate,
                              const OptimizerConfig& cfg) {
  if (n < 1) throw DomainError("eb_exponent_bound: n must be >= 1");
  const RadiusResult cap = holevo_capacity(ch, cfg);
  const double chi = cap.value;
  if (!(rate > chi))
    throw DomainError("eb_exponent_bound: requires R > chi = " +
                      std::to_string(chi));
  const double c = c_constant_at(ch, cap.sigma_star, cfg);
  if (!std::isfinite(c))
    throw DomainError("eb_exponent_bound: unbounded channel constant");
  const double l = std::log2(c);
  const double alpha = choose_alpha(rate, chi, c);
  const double m1 = kLog2Three / (4.0 * l);
  const double m2 = (rate - chi) / (8.0 * l * l);
  const bool second_term_active = m2 <= m1 && m2 <= 1.0;

  const double chi_tilde = alpha_holevo(ch, alpha, cfg);
  const double k_tilde = info_radius(ch, alpha, cfg).value;

  // Exponents (bits per use) of the displayed chain, in order.
  const double f = (alpha - 1.0) / alpha;
  const double x1 = f * (rate - chi_tilde);
  const double x2 = f * (rate - k_tilde);
  const double x3 = f * (rate - (chi + 4.0 * (alpha - 1.0) * l * l));
  const double x4 = 0.5 * (alpha - 1.0) * (rate - 0.5 * (rate + chi));
  const double x5 = 0.25 * (alpha - 1.0) * (rate - chi);
  const double x6 = (rate - chi) * (rate - chi) / (32.0 * l * l);

  // Runtime verification of each chain step on the computed numbers. The
  // optimizer-backed steps get a 2e-3 slack on the underlying quantities;
  // the scalar steps are checked to rounding.
  const double opt_tol = f * 2e-3 + 1e-12;
  if (std::abs(x1 - x2) > opt_tol)
    throw InvariantError("eb_exponent_bound: chain step 1 (holevo = radius) off by " +
                         std::to_string(x1 - x2));
  if (x2 < x3 - opt_tol)
    throw InvariantError("eb_exponent_bound: chain step 2 (gap bound) violated by " +
                         std::to_string(x3 - x2));
  if (x3 < x4 - 1e-12 * (1.0 + std::abs(x4)))
    throw InvariantError("eb_exponent_bound: chain step 3 (alpha choice) violated");
  if (std::abs(x4 - x5) > 1e-12 * (1.0 + std::abs(x4)))
    throw InvariantError("eb_exponent_bound: chain step 4 (algebra) violated");
  if (second_term_active && std::abs(x5 - x6) > 1e-9 * (1.0 + std::abs(x5)))
    throw InvariantError("eb_exponent_bound: chain step 5 (final form) violated");

  BoundReport rep;
  rep.n = n;
  rep.rate = rate;
  rep.alpha_used = alpha;
  rep.exponent = x6;
  rep.p_succ_bound = std::exp2(-static_cast<double>(n) * x6);
  rep.vacuous = false;
  rep.components["chi"] = chi;
  rep.components["c"] = c;
  rep.components["log2_c"] = l;
  rep.components["chi_tilde_alpha"] = chi_tilde;
  rep.components["k_tilde_alpha"] = k_tilde;
  rep.components["x1"] = x1;
  rep.components["x2"] = x2;
  rep.components["x3"] = x3;
  rep.components["x4"] = x4;
  rep.components["x5"] = x5;
  rep.components["x6"] = x6;
  rep.components["second_term_active"] = second_term_active ? 1.0 : 0.0;
  return rep;
}

BoundReport sqrt_n_bound(const KrausChannel& ch, int n, double rate,
                         const OptimizerConfig& cfg) {
  if (n < 1) throw DomainError("sqrt_n_bound: n must be >= 1");
  const RadiusResult cap = holevo_capacity(ch, cfg);
  const double chi = cap.value;
  const double c = c_constant_at(ch, cap.sigma_star, cfg);
  if (!std::isfinite(c))
    throw DomainError("sqrt_n_bound: unbounded channel constant");
  const double l = std::log2(c);
  const double rn = std::sqrt(static_cast<double>(n));
  const double alpha = 1.0 + 1.0 / rn;
  const double total_exponent =
      rn * (1.0 / (1.0 + 1.0 / rn)) * (rate - (chi + 4.0 / rn * l * l));

  BoundReport rep;
  rep.n = n;
  rep.rate = rate;
  rep.alpha_used = alpha;
  rep.components["chi"] = chi;
  rep.components["c"] = c;
  rep.components["log2_c"] = l;
  rep.components["total_exponent"] = total_exponent;
  // Exponent positive once sqrt(n) > 4 (log2 c)^2 / (R - chi).
  rep.components["n_threshold"] =
      rate > chi ? std::pow(4.0 * l * l / (rate - chi), 2.0) : kInf;
  if (total_exponent <= 0.0) {
    rep.vacuous = true;
    rep.exponent = 0.0;
    rep.p_succ_bound = 1.0;
  } else {
    rep.exponent = total_exponent / static_cast<double>(n);
    rep.p_succ_bound = std::exp2(-total_exponent);
  }
  return rep;
}

double weak_converse_rate(int n, double eps, double chi_total) {
  if (n < 1) throw DomainError("weak_converse_rate: n must be >= 1");
  if (eps < 0.0 || eps >= 1.0)
    throw DomainError("weak_converse_rate: eps must lie in [0, 1)");
  const double h2 = (eps <= 0.0 || eps >= 1.0)
                        ? 0.0
                        : -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
  return (chi_total + h2) / (static_cast<double>(n) * (1.0 - eps));
}

Povm pgm_decoder(const std::vector<DensityMatrix>& outputs,
                 const std::vector<double>& priors) {
  if (outputs.empty() || outputs.size() != priors.size())
    throw DomainError("pgm_decoder: outputs/priors mismatch");
  double sum = 0.0;
  for (double p : priors) {
    if (p < 0.0) throw DomainError("pgm_decoder: negative prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw DomainError("pgm_decoder: priors do not sum to one");

  const Index d = outputs.front().dim();
  Matrix s = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < outputs.size(); ++m)
    s += priors[m] * outputs[m].matrix();
  const Matrix root_inv =
      fractional_power(hermitian_unchecked(0.5 * (s + s.adjoint().eval())), -0.5)
          .matrix();

  std::vector<HermitianOperator> elements;
  Matrix acc = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < outputs.size(); ++m) {
    Matrix lam = root_inv * (priors[m] * outputs[m].matrix()) * root_inv;
    lam = 0.5 * (lam + lam.adjoint().eval());
    acc += lam;
    elements.push_back(hermitian_unchecked(std::move(lam)));
  }
  Matrix abort = Matrix::Identity(d, d) - acc;
  abort = 0.5 * (abort + abort.adjoint().eval());
  elements.push_back(hermitian_unchecked(std::move(abort)));
  return Povm(std::move(elements));
}

SimulationResult simulate_code(const KrausChannel& ch, const CodeSpec& spec,
                               int trials) {
  if (trials < 1) throw DomainError("simulate_code: trials must be >= 1");
  if (!ch.is_trace_preserving())
    throw DomainError("simulate_code: channel must be trace-preserving");
  if (spec.ensemble.state_dim() != ch.dim_in())
    throw DomainError("simulate_code: ensemble/channel dimension mismatch");
  double out_dim = 1.0;
  for (int i = 0; i < spec.n; ++i) out_dim *= static_cast<double>(ch.dim_out());
  if (out_dim > 256.0)
    throw DomainError("simulate_code: output space beyond the desk-scale guard");

  // Per-letter outputs are fixed by the ensemble; codewords tensor them.
  std::vector<Matrix> letter_outputs;
  for (const auto& st : spec.ensemble.states)
    letter_outputs.push_back(ch.apply(st).matrix());

  const int messages = spec.message_count();
  std::vector<double> cumulative(spec.ensemble.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < spec.ensemble.size(); ++x) {
    acc += spec.ensemble.probs[x];
    cumulative[x] = acc;
  }

  SimulationResult result;
  result.per_codebook.resize(trials);
  par::for_each_index(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Rng rng(derive_seed(spec.seed, t));
    std::vector<DensityMatrix> codeword_outputs;
    codeword_outputs.reserve(messages);
    for (int m = 0; m < messages; ++m) {
      Matrix out = Matrix::Identity(1, 1);
      for (int i = 0; i < spec.n; ++i) {
        const double u = rng.uniform();
        std::size_t x = 0;
        while (x + 1 < cumulative.size() && u > cumulative[x]) ++x;
        out = tensor_product(out, letter_outputs[x]);
      }
      codeword_outputs.push_back(
          DensityMatrix(hermitian_unchecked(0.5 * (out + out.adjoint().eval()))));
    }
    const std::vector<double> priors(messages, 1.0 / static_cast<double>(messages));
    const Povm decoder = pgm_decoder(codeword_outputs, priors);
    double p_succ = 0.0;
    for (int m = 0; m < messages; ++m)
      p_succ += priors[m] * (decoder.elements[m].matrix() *
                             codeword_outputs[m].matrix())
                                .trace()
                                .real();
    result.per_codebook[t] = p_succ;
  });

  double mean = 0.0;
  for (double v : result.per_codebook) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : result.per_codebook) var += (v - mean) * (v - mean);
  result.p_succ_mean = mean;
  result.std_error =
      trials > 1 ? std::sqrt(var / (static_cast<double>(trials) *
                                    static_cast<double>(trials - 1)))
                 : 0.0;
  return result;
}

}  // namespace renyicap
