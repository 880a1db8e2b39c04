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

#include <map>
#include <string>
#include <vector>

#include "renyicap/capacity.hpp"
#include "renyicap/channels.hpp"

namespace renyicap {

/// A rate-R block code drawing product codewords from an ensemble.
struct CodeSpec {
  int n = 1;
  double rate = 1.0;
  Ensemble ensemble;
  std::uint64_t seed = 0;

  CodeSpec(int n_, double rate_, Ensemble ens, std::uint64_t seed_);

  /// round(2^(nR)); at least 2 by invariant.
  int message_count() const { return message_count_; }

 private:
  int message_count_;
};

/// Success-probability bound with its audit trail. The invariant
/// p_succ_bound = 2^(-exponent * n) holds to 1e-12; `exponent` is in bits
/// per channel use.
struct BoundReport {
  double p_succ_bound = 1.0;
  double alpha_used = 0.0;
  double exponent = 0.0;
  int n = 0;
  double rate = 0.0;
  bool vacuous = false;
  std::map<std::string, double> components;
};

/// p_succ <= 2^(-n ((a-1)/a) (R - chi_alpha_total / n)); values above one
/// clamp to one with the vacuous flag set.
BoundReport generic_bound(int n, double rate, double chi_alpha_total,
                          double alpha);

/// Both sides of the near-one expansion bounds
/// D_alpha <= D + 4 (a-1) (log2 nu)^2 (and the sandwiched variant), with the
/// channel-free constant nu = 2^(D_{3/2}/2) + 2^(-D_{1/2}/2) + 1 and the
/// admissible alpha window.
struct GapCheck {
  double nu = 0.0;
  double alpha_window_max = 0.0;
  bool alpha_window_ok = false;
  double lhs_traditional = 0.0;
  double lhs_sandwiched = 0.0;
  double vn = 0.0;
  double rhs = 0.0;
};

GapCheck gap_inequality_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                              double alpha);

/// alpha = 1 + min{log2(3) / (4 log2 c), (R - chi) / (8 (log2 c)^2), 1};
/// requires R > chi and c > 1. The guarantee
/// chi + (alpha-1)(log2 c)^2 <= (R + chi)/2 is asserted.
double choose_alpha(double rate, double chi, double c);

/// Full strong-converse pipeline for a declared entanglement-breaking
/// channel: computes chi, c, alpha, both Holevo-route and radius-route
/// alpha-quantities, verifies every displayed step of the exponent chain at
/// runtime, and reports p_succ <= 2^(-n (R - chi)^2 / (32 (log2 c)^2)).
BoundReport eb_exponent_bound(const KrausChannel& ch, int n, double rate,
                              const OptimizerConfig& cfg);

/// The alpha = 1 + 1/sqrt(n) variant; the components carry the threshold n
/// beyond which the exponent turns positive.
BoundReport sqrt_n_bound(const KrausChannel& ch, int n, double rate,
                         const OptimizerConfig& cfg);

/// (chi_total + h2(eps)) / (n (1 - eps)).
double weak_converse_rate(int n, double eps, double chi_total);

/// Pretty-good measurement: Lambda_m = S^(-1/2) p_m rho_m S^(-1/2) with
/// S = sum p_m rho_m, completed by an abort element on the null space.
Povm pgm_decoder(const std::vector<DensityMatrix>& outputs,
                 const std::vector<double>& priors);

/// Exact success probabilities of randomly drawn codebooks (trials resamples
/// of the codebook; no measurement shot noise).
struct SimulationResult {
  double p_succ_mean = 0.0;
  double std_error = 0.0;
  std::vector<double> per_codebook;
};

SimulationResult simulate_code(const KrausChannel& ch, const CodeSpec& spec,
                               int trials);

}  // namespace renyicap
