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

#include <cstdint>
#include <functional>
#include <vector>

#include "renyicap/channels.hpp"
#include "renyicap/linalg.hpp"

namespace renyicap {

/// Knobs shared by all seeded multistart optimizations. A run is fully
/// determined by its config; restart batches may execute in parallel and
/// reduce deterministically.
struct OptimizerConfig {
  int restarts = 16;
  double inner_tol = 1e-9;
  double outer_tol = 1e-7;
  int max_iters = 400;
  std::uint64_t seed = 0;

  void validate() const;
};

namespace opt {

struct NelderMeadOptions {
  int max_iters = 800;
  double f_tol = 1e-11;
  double x_tol = 1e-10;
  double init_step = 0.25;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iters = 0;
  bool converged = false;
};

/// Derivative-free simplex minimization; +infinity objective values are
/// legal and simply repel the simplex.
NelderMeadResult nelder_mead_minimize(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x0, const NelderMeadOptions& opts);

struct SphereAscentOptions {
  int max_iters = 250;
  double grad_tol = 1e-8;
  double step_init = 0.4;
  double fd_step = 1e-5;
};

struct SphereAscentResult {
  Vector psi;
  double value = 0.0;
  int iters = 0;
  bool converged = false;
};

using SphereGradient = std::function<Vector(const Vector&)>;

/// Projected gradient ascent over the unit sphere in C^d with backtracking.
/// Gradients are estimated by central differences unless an analytic
/// gradient closure is supplied.
SphereAscentResult maximize_on_sphere(const std::function<double(const Vector&)>& f,
                                      const Vector& psi0,
                                      const SphereAscentOptions& opts,
                                      const SphereGradient& grad = {});

struct MultistartResult {
  double value = 0.0;
  Vector arg;
  int restarts_used = 0;
  bool converged = false;
};

/// Multistart wrapper: `warm_starts` first, then `restarts` seeded random
/// unit vectors. Restarts run independently (possibly in parallel) and are
/// reduced by maximum value with first-found tie-breaking under seeded
/// order, so the result is deterministic regardless of scheduling.
MultistartResult multistart_sphere_max(
    const std::function<double(const Vector&)>& f, Index dim, int restarts,
    std::uint64_t seed, const SphereAscentOptions& opts,
    const std::vector<Vector>& warm_starts = {}, const SphereGradient& grad = {});

/// Square-root parametrization of full-rank density matrices: d^2 real
/// parameters fill a lower-triangular L (real diagonal) and
/// sigma = L L^dag / Tr{L L^dag}.
DensityMatrix state_from_params(const Eigen::VectorXd& x, Index dim);
Eigen::VectorXd params_from_state(const DensityMatrix& sigma);

}  // namespace opt

}  // namespace renyicap
