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

#include <doctest.h>

#include <cmath>

#include "renyicap/capacity.hpp"
#include "test_helpers.hpp"

using namespace renyicap;

namespace {

OptimizerConfig quick_cfg(std::uint64_t seed = 1) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = seed;
  return cfg;
}

KrausChannel dephasing_channel(double q) {
  std::vector<Matrix> kraus{std::sqrt(1.0 - q) * Matrix::Identity(2, 2),
                            std::sqrt(q) * test::diag2(1.0, -1.0)};
  return KrausChannel(2, 2, kraus);
}

KrausChannel computational_pinching() {
  return pinching(Matrix::Identity(2, 2));
}

}  // namespace

TEST_CASE("radius around a fixed reference") {
  const OptimizerConfig cfg = quick_cfg(3);

  const RadiusResult id_r = info_radius_around(
      KrausChannel::identity(2), DensityMatrix::maximally_mixed(2), 1.5, cfg);
  CHECK(id_r.value == doctest::Approx(1.0).epsilon(1e-8));

  const RadiusResult dep_r = info_radius_around(
      depolarizing(2, 1.0), DensityMatrix::maximally_mixed(2), 2.0, cfg);
  CHECK(dep_r.value == doctest::Approx(0.0).epsilon(1e-9));

  // Bloch-sphere grid oracle for the p = 0.5 depolarizing channel
  const KrausChannel half = depolarizing(2, 0.5);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  double grid_best = 0.0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) {
      const double theta = M_PI * (i + 0.5) / 100.0;
      const double phi = 2.0 * M_PI * j / 100.0;
      Vector psi(2);
      psi << std::cos(theta / 2.0),
          std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0);
      const DensityMatrix out = half.apply(DensityMatrix::pure(psi));
      grid_best =
          std::max(grid_best, sandwiched_d(out.op(), mixed.op(), 2.0).value);
    }
  const RadiusResult half_r = info_radius_around(half, mixed, 2.0, cfg);
  CHECK(half_r.value >= grid_best - 1e-9);
  CHECK(half_r.value == doctest::Approx(grid_best).epsilon(1e-6));
}

TEST_CASE("information radius minimax") {
  const OptimizerConfig cfg = quick_cfg(5);

  const RadiusResult id_r = info_radius(KrausChannel::identity(2), 1.5, cfg);
  CHECK(id_r.value == doctest::Approx(1.0).epsilon(2e-4));
  CHECK(max_abs_diff(id_r.sigma_star.matrix(), 0.5 * Matrix::Identity(2, 2)) <
        0.02);

  const RadiusResult dep_r = info_radius(depolarizing(2, 1.0), 2.0, cfg);
  CHECK(dep_r.value == doctest::Approx(0.0).epsilon(1e-6));

  const double k0 = info_radius(depolarizing(2, 0.0), 2.0, cfg).value;
  const double k_half = info_radius(depolarizing(2, 0.5), 2.0, cfg).value;
  const double k1 = info_radius(depolarizing(2, 1.0), 2.0, cfg).value;
  CHECK(k1 < k_half);
  CHECK(k_half < k0);

  // re-evaluating the inner maximum at sigma_star reproduces the value
  const RadiusResult again = info_radius_around(depolarizing(2, 0.5),
                                                info_radius(depolarizing(2, 0.5),
                                                            2.0, cfg)
                                                    .sigma_star,
                                                2.0, cfg);
  CHECK(std::abs(again.value - k_half) <= info_radius(depolarizing(2, 0.5), 2.0, cfg)
                                              .gap_estimate);

  CHECK_THROWS_AS(info_radius(KrausChannel::identity(2), 2.5, cfg), DomainError);
}

TEST_CASE("ensemble alpha-holevo quantity") {
  const OptimizerConfig cfg = quick_cfg(7);

  // single-member ensemble: radius of one point is zero
  const Ensemble single({1.0}, {random_density(2, 2, 71)});
  CHECK(alpha_holevo_of_ensemble(single, KrausChannel::identity(2), 1.5, cfg) ==
        doctest::Approx(0.0).epsilon(1e-6));

  // uniform basis ensemble through the identity at alpha = 2: a diagonal
  // sigma scan provides the oracle value of 1 bit
  const Ensemble basis({0.5, 0.5}, {DensityMatrix::basis_state(2, 0),
                                    DensityMatrix::basis_state(2, 1)});
  double scan_best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 200; ++i) {
    const double s = static_cast<double>(i) / 200.0;
    // commuting case: sum_x p_x q_x with q_x = s_x^(1-alpha) at alpha 2
    const double q = 0.5 / s + 0.5 / (1.0 - s);
    scan_best = std::min(scan_best, std::log2(q));
  }
  const double ens_val =
      alpha_holevo_of_ensemble(basis, KrausChannel::identity(2), 2.0, cfg);
  CHECK(scan_best == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(ens_val == doctest::Approx(1.0).epsilon(1e-5));

  const Ensemble pair({0.3, 0.7}, {random_density(2, 2, 72),
                                   random_density(2, 2, 73)});
  CHECK(alpha_holevo_of_ensemble(pair, depolarizing(2, 1.0), 1.5, cfg) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("alpha-holevo equals the information radius") {
  const OptimizerConfig cfg = quick_cfg(9);

  CHECK(alpha_holevo(KrausChannel::identity(2), 1.5, cfg) ==
        doctest::Approx(1.0).epsilon(2e-4));
  CHECK(alpha_holevo(depolarizing(2, 1.0), 1.5, cfg) ==
        doctest::Approx(0.0).epsilon(1e-5));

  const KrausChannel ch = random_channel(2, 2, 2, 91);
  const double chi_tilde = alpha_holevo(ch, 2.0, cfg);
  const double k_tilde = info_radius(ch, 2.0, cfg).value;
  CHECK(std::abs(chi_tilde - k_tilde) <= 1e-3);
}

TEST_CASE("generalized holevo selectors") {
  const OptimizerConfig cfg = quick_cfg(11);

  const double chi_vn = generalized_holevo(KrausChannel::identity(2),
                                           DivergenceKind::von_neumann, 0.0, cfg);
  CHECK(chi_vn == doctest::Approx(1.0).epsilon(2e-4));

  const KrausChannel ch = random_channel(2, 2, 3, 92);
  const double sand = generalized_holevo(ch, DivergenceKind::sandwiched, 1.5, cfg);
  const double trad = generalized_holevo(ch, DivergenceKind::traditional, 1.5, cfg);
  CHECK(trad >= sand - 1e-4);
}

TEST_CASE("holevo capacity minimax") {
  const OptimizerConfig cfg = quick_cfg(13);

  const RadiusResult id_cap = holevo_capacity(KrausChannel::identity(2), cfg);
  CHECK(id_cap.value == doctest::Approx(1.0).epsilon(2e-4));
  CHECK(max_abs_diff(id_cap.sigma_star.matrix(), 0.5 * Matrix::Identity(2, 2)) <
        0.02);

  CHECK(holevo_capacity(depolarizing(2, 1.0), cfg).value ==
        doctest::Approx(0.0).epsilon(1e-6));

  CHECK(holevo_capacity(computational_pinching(), cfg).value ==
        doctest::Approx(1.0).epsilon(2e-4));
}

TEST_CASE("channel constant c") {
  const OptimizerConfig cfg = quick_cfg(15);

  CHECK(c_constant(depolarizing(2, 1.0), cfg) ==
        doctest::Approx(3.0).epsilon(1e-6));

  // identity qubit at sigma* = I/2: D_{3/2}(pure || I/2) = 1, so c = sqrt(2)+2
  CHECK(c_constant_at(KrausChannel::identity(2),
                      DensityMatrix::maximally_mixed(2), cfg) ==
        doctest::Approx(std::sqrt(2.0) + 2.0).epsilon(1e-8));

  // optimizer self-consistency at the reported argmax for a random EB channel
  const Povm povm = random_povm(2, 2, 151);
  const std::vector<DensityMatrix> outs{random_density(2, 2, 152),
                                        random_density(2, 2, 153)};
  const KrausChannel eb = eb_from_measure_prepare(povm, outs);
  const RadiusResult cap = holevo_capacity(eb, cfg);
  const double c = c_constant_at(eb, cap.sigma_star, cfg);
  CHECK(c >= 3.0 - 1e-9);
  CHECK(std::isfinite(c));
}

TEST_CASE("covariant radius bound") {
  const OptimizerConfig cfg = quick_cfg(17);

  CHECK(covariant_radius_bound(KrausChannel::identity(2), 1.5, cfg) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(covariant_radius_bound(depolarizing(2, 1.0), 2.0, cfg) ==
        doctest::Approx(0.0).epsilon(1e-8));

  const KrausChannel half = depolarizing(2, 0.5);
  const double bound = covariant_radius_bound(half, 1.5, cfg);
  const double radius = info_radius(half, 1.5, cfg).value;
  CHECK(radius <= bound + 1e-6);
  CHECK(radius == doctest::Approx(bound).epsilon(1e-3));  // covariance
}

TEST_CASE("subadditivity gaps stay within tolerance") {
  OptimizerConfig cfg = quick_cfg(19);
  cfg.restarts = 12;  // joint searches add their own mandated restarts

  const double dep_gap =
      subadditivity_gap(depolarizing(2, 1.0), depolarizing(2, 1.0), 1.5, cfg);
  CHECK(dep_gap <= 1e-9);

  const double pinch_gap = subadditivity_gap(computational_pinching(),
                                             computational_pinching(), 1.5, cfg);
  CHECK(pinch_gap <= 1e-4);

  const Povm povm = random_povm(2, 2, 191);
  const std::vector<DensityMatrix> outs{random_density(2, 2, 192),
                                        random_density(2, 2, 193)};
  const KrausChannel eb = eb_from_measure_prepare(povm, outs);
  const KrausChannel other = random_channel(2, 2, 2, 194);
  const double mixed_gap = subadditivity_gap(eb, other, 2.0, cfg);
  CHECK(mixed_gap <= 1e-4);
}

TEST_CASE("fixed-sigma subadditivity for hadamard channels") {
  OptimizerConfig cfg = quick_cfg(21);
  cfg.restarts = 12;

  // unitary channel: trivial environment, multiplicative outputs
  Matrix u(2, 2);
  const double c = std::cos(0.3), s = std::sin(0.3);
  u << c, -s, s, c;
  const KrausChannel unitary(2, 2, {u});
  const FixedSigmaGap triv = fixed_sigma_subadditivity_gap(
      unitary, holevo_capacity(unitary, cfg).sigma_star, 1.5, cfg);
  CHECK(triv.gap <= 1e-6);

  const KrausChannel deph = dephasing_channel(0.3);
  const DensityMatrix sigma = holevo_capacity(deph, cfg).sigma_star;
  const FixedSigmaGap deph_gap = fixed_sigma_subadditivity_gap(deph, sigma, 1.5, cfg);
  CHECK(deph_gap.gap <= 1e-3);
  CHECK(deph_gap.complement_eb == EbVerdict::yes);

  const KrausChannel smoothed = smooth_hadamard(deph, 0.1);
  const DensityMatrix sigma_s = holevo_capacity(smoothed, cfg).sigma_star;
  const FixedSigmaGap smooth_gap =
      fixed_sigma_subadditivity_gap(smoothed, sigma_s, 1.5, cfg);
  CHECK(smooth_gap.gap <= 1e-3);
}
