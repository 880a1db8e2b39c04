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

#include <limits>
#include <vector>

#include "renyicap/channels.hpp"
#include "renyicap/linalg.hpp"
#include "renyicap/optimize.hpp"

namespace renyicap {

/// Extended-real divergence: a finite value in bits, or +infinity exactly
/// when the support condition fails.
struct DivergenceValue {
  double value = 0.0;
  bool support_ok = true;

  bool is_finite() const { return support_ok; }

  static DivergenceValue infinite() {
    return DivergenceValue{std::numeric_limits<double>::infinity(), false};
  }
  static DivergenceValue finite(double v) { return DivergenceValue{v, true}; }
};

/// Sandwiched quasi-relative entropy Tr{(B^((1-a)/2a) A B^((1-a)/2a))^a},
/// +infinity when supp(A) is not contained in supp(B). The sandwiched inner
/// operator is symmetrized before the power to suppress round-off asymmetry.
/// Requires alpha > 1.
DivergenceValue sandwiched_q(const HermitianOperator& a, const HermitianOperator& b,
                             double alpha, double support_tol = kSupportTol);

/// Sandwiched Renyi relative entropy (1/(a-1)) log2 of the quasi-entropy.
DivergenceValue sandwiched_d(const HermitianOperator& a, const HermitianOperator& b,
                             double alpha, double support_tol = kSupportTol);

/// Traditional Renyi relative entropy (1/(a-1)) log2 Tr{A^a B^(1-a)} for
/// alpha > 1, with B^(1-a) as a pseudo-power and the same support clause as
/// the sandwiched quantity.
DivergenceValue renyi_d(const HermitianOperator& a, const HermitianOperator& b,
                        double alpha, double support_tol = kSupportTol);

/// Same formula on the wider domain alpha in (0,1) or (1,inf); the 1/2 and
/// 3/2 orders feed the gap-constant machinery.
DivergenceValue renyi_d_extended(const HermitianOperator& a,
                                 const HermitianOperator& b, double alpha,
                                 double support_tol = kSupportTol);

/// Tr{A log2 A} - Tr{A log2 B} on supports; +infinity when the support
/// condition fails.
DivergenceValue vn_relative_entropy(const HermitianOperator& a,
                                    const HermitianOperator& b,
                                    double support_tol = kSupportTol);

/// Classical Renyi divergence of two probability vectors, alpha > 0,
/// alpha != 1, with the 0^a * 0^(1-a) = 0 convention.
DivergenceValue classical_renyi(const std::vector<double>& p,
                                const std::vector<double>& q, double alpha);

/// Binary classical divergence delta_a(eps || 1 - 2^(-nR)) used by the
/// success-probability bound; requires eps <= 1 - 2^(-nR).
double binary_cq_divergence(double eps, int n, double rate, double alpha);

/// ||X^(1/2) A X^(1/2)||_alpha for PSD X.
double sandwiched_alpha_norm(const Matrix& a, const HermitianOperator& x,
                             double alpha);

/// Renyi entropy (1/(1-a)) log2 Tr{rho^a}.
double renyi_entropy(const DensityMatrix& rho, double alpha);

/// Result of a pure-input output optimization with diagnostics.
struct OutputOptResult {
  double value = 0.0;
  Vector input;  // optimizing pure input vector
  int restarts_used = 0;
  bool converged = false;
};

/// Maximum output alpha-norm nu_alpha of a CP (possibly non-TP) map over
/// pure inputs, by seeded multistart ascent on the input sphere. Pure inputs
/// suffice: the norm is convex in the input state, so the maximum over the
/// state simplex sits at an extreme point.
OutputOptResult max_output_alpha_norm(const KrausChannel& map, double alpha,
                                      const OptimizerConfig& cfg);

/// Minimum output Renyi entropy over pure inputs; satisfies
/// H_alpha^min = (alpha/(1-alpha)) log2 nu_alpha.
OutputOptResult min_output_renyi(const KrausChannel& ch, double alpha,
                                 const OptimizerConfig& cfg);

}  // namespace renyicap
