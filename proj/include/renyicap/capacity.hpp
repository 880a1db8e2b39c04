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

#include "renyicap/channels.hpp"
#include "renyicap/divergences.hpp"
#include "renyicap/optimize.hpp"

namespace renyicap {

enum class DivergenceKind { sandwiched, traditional, von_neumann };

/// Outcome of a minimax radius computation. The reported value is the inner
/// maximum re-evaluated at the returned sigma, hence an upper estimate of
/// the true minimax up to inner-max undershoot.
struct RadiusResult {
  double value = 0.0;  // bits
  DensityMatrix sigma_star;
  DensityMatrix worst_input;  // pure
  int restarts_used = 0;
  bool converged = false;
  double gap_estimate = 0.0;  // outer-vs-inner consistency
};

/// max over pure inputs of D(N(psi) || sigma) at a fixed reference state.
/// Pure inputs suffice by joint quasi-convexity. +infinity propagates when
/// an output escapes the support of sigma.
RadiusResult info_radius_around(const KrausChannel& ch, const DensityMatrix& sigma,
                                double alpha, const OptimizerConfig& cfg,
                                DivergenceKind kind = DivergenceKind::sandwiched);

/// Information radius min over sigma of the radius around sigma, by
/// derivative-free search on a square-root parametrization of sigma with a
/// multistart gradient-ascent inner loop.
RadiusResult info_radius(const KrausChannel& ch, double alpha,
                         const OptimizerConfig& cfg,
                         DivergenceKind kind = DivergenceKind::sandwiched);

/// min over sigma of (1/(a-1)) log2 sum_x p(x) Tr{(s^((1-a)/2a) N(rho_x)
/// s^((1-a)/2a))^a} — a single outer minimization with the inner sum exact.
double alpha_holevo_of_ensemble(const Ensemble& ens, const KrausChannel& ch,
                                double alpha, const OptimizerConfig& cfg,
                                DivergenceKind kind = DivergenceKind::sandwiched);

/// max over ensembles of at most d^2 pure states of the ensemble quantity.
/// Independent of the minimax route; the two agree within combined optimizer
/// tolerance.
double alpha_holevo(const KrausChannel& ch, double alpha,
                    const OptimizerConfig& cfg);

/// Ensemble-route Holevo quantity for a selectable divergence; the von
/// Neumann selector gives the Holevo information chi.
double generalized_holevo(const KrausChannel& ch, DivergenceKind kind,
                          double alpha, const OptimizerConfig& cfg);

/// Minimax with the von Neumann relative entropy; the value is the Holevo
/// capacity and sigma_star feeds the converse-bound constants.
RadiusResult holevo_capacity(const KrausChannel& ch, const OptimizerConfig& cfg);

/// Channel constant c = max over pure inputs of 2^(D_{3/2}(N(psi)||sigma*)/2) + 2
/// at the capacity-optimal sigma*. Infinite when some output escapes the
/// support of sigma*.
double c_constant(const KrausChannel& ch, const OptimizerConfig& cfg);
double c_constant_at(const KrausChannel& ch, const DensityMatrix& sigma_star,
                     const OptimizerConfig& cfg);

/// log2(d_out) - H_alpha^min(N): the radius bound from the maximally mixed
/// reference, tight for covariant channels.
double covariant_radius_bound(const KrausChannel& ch, double alpha,
                              const OptimizerConfig& cfg);

/// Entangled-input maximum of D_alpha against sigma1* (x) sigma2* minus the
/// sum of single-copy radii. Positive values beyond tolerance falsify
/// subadditivity; at least 50 entangled restarts are used.
double subadditivity_gap(const KrausChannel& ch1, const KrausChannel& ch2,
                         double alpha, const OptimizerConfig& cfg);

struct FixedSigmaGap {
  double gap = 0.0;
  EbVerdict complement_eb = EbVerdict::inconclusive;
};

/// Radius-around-sigma subadditivity gap for two copies of a channel:
/// radius(ch (x) ch around sigma (x) sigma) - 2 radius(ch around sigma).
/// The verdict records whether the complement certifies as
/// entanglement-breaking.
FixedSigmaGap fixed_sigma_subadditivity_gap(const KrausChannel& ch,
                                            const DensityMatrix& sigma,
                                            double alpha,
                                            const OptimizerConfig& cfg);

}  // namespace renyicap
