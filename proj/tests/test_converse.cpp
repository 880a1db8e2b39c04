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

#include "renyicap/converse.hpp"
#include "test_helpers.hpp"

using namespace renyicap;

namespace {

OptimizerConfig quick_cfg(std::uint64_t seed = 1) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.seed = seed;
  return cfg;
}

KrausChannel computational_pinching() { return pinching(Matrix::Identity(2, 2)); }

Ensemble basis_ensemble() {
  return Ensemble({0.5, 0.5}, {DensityMatrix::basis_state(2, 0),
                               DensityMatrix::basis_state(2, 1)});
}

}  // namespace

TEST_CASE("generic bound") {
  const BoundReport unit = generic_bound(4, 1.0, 4.0, 1.5);
  CHECK(unit.p_succ_bound == doctest::Approx(1.0));
  CHECK(unit.vacuous);

  const BoundReport direct = generic_bound(1, 2.0, 1.0, 2.0);
  CHECK(direct.p_succ_bound == doctest::Approx(std::exp2(-0.5)).epsilon(1e-12));
  CHECK_FALSE(direct.vacuous);

  // independent scalar evaluation for n=10, alpha=1.5, R=1.2, chi/n=1.0
  const BoundReport ten = generic_bound(10, 1.2, 10.0, 1.5);
  const double oracle = std::exp2(-10.0 * (0.5 / 1.5) * (1.2 - 1.0));
  CHECK(ten.p_succ_bound == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(ten.p_succ_bound ==
        doctest::Approx(std::exp2(-ten.exponent * 10.0)).epsilon(1e-12));

  CHECK_THROWS_AS(generic_bound(4, 1.0, 4.0, 2.5), DomainError);
}

TEST_CASE("gap inequality check") {
  const DensityMatrix rho = random_density(2, 2, 3);
  const GapCheck self = gap_inequality_check(rho, rho, 1.2);
  CHECK(self.nu == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(self.lhs_traditional == doctest::Approx(0.0).epsilon(1e-9));
  const double l3 = std::log2(3.0);
  CHECK(self.rhs == doctest::Approx(4.0 * 0.2 * l3 * l3).epsilon(1e-9));
  CHECK(self.alpha_window_ok);

  // commuting pair with a classical scalar oracle for all five quantities
  const DensityMatrix p(HermitianOperator(test::diag2(0.9, 0.1)));
  const DensityMatrix q = DensityMatrix::maximally_mixed(2);
  auto classical = [&](double a) {
    return std::log2(std::pow(0.9, a) * std::pow(0.5, 1.0 - a) +
                     std::pow(0.1, a) * std::pow(0.5, 1.0 - a)) /
           (a - 1.0);
  };
  const double nu_oracle = std::exp2(0.5 * classical(1.5)) +
                           std::exp2(-0.5 * classical(0.5)) + 1.0;
  const double window = 1.0 + std::log2(3.0) / (4.0 * std::log2(nu_oracle));
  const double mid = 0.5 * (1.0 + window);
  const GapCheck gc = gap_inequality_check(p, q, mid);
  CHECK(gc.nu == doctest::Approx(nu_oracle).epsilon(1e-10));
  CHECK(gc.alpha_window_ok);
  CHECK(gc.lhs_traditional == doctest::Approx(classical(mid)).epsilon(1e-10));
  CHECK(gc.lhs_sandwiched == doctest::Approx(classical(mid)).epsilon(1e-10));
  const double vn_oracle =
      0.9 * std::log2(0.9 / 0.5) + 0.1 * std::log2(0.1 / 0.5);
  CHECK(gc.vn == doctest::Approx(vn_oracle).epsilon(1e-10));
  CHECK(gc.lhs_traditional <= gc.rhs + 1e-9);
  CHECK(gc.lhs_sandwiched <= gc.rhs + 1e-9);

  // corpus sweep: in-window pairs satisfy both inequalities
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix a = random_density(2, 2, 1000 + seed);
    const DensityMatrix b = random_density(2, 2, 2000 + seed);
    GapCheck probe = gap_inequality_check(a, b, 1.0 + 1e-3);
    const double alpha = 1.0 + 0.5 * (probe.alpha_window_max - 1.0);
    const GapCheck at = gap_inequality_check(a, b, alpha);
    CHECK(at.alpha_window_ok);
    CHECK(at.lhs_traditional <= at.rhs + 1e-9);
    CHECK(at.lhs_sandwiched <= at.rhs + 1e-9);
  }
}

TEST_CASE("alpha selection rule") {
  const double huge = choose_alpha(100.0, 0.0, 2.0);
  CHECK(huge == doctest::Approx(1.0 + std::log2(3.0) / 4.0).epsilon(1e-12));

  const double near = choose_alpha(1.08, 1.0, 2.0);
  CHECK(near == doctest::Approx(1.01).epsilon(1e-12));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const double chi = rng.uniform();
    const double rate = chi + 0.01 + rng.uniform();
    const double c = 2.0 + 3.0 * rng.uniform();
    const double alpha = choose_alpha(rate, chi, c);
    const double l = std::log2(c);
    CHECK(chi + (alpha - 1.0) * l * l <= 0.5 * (rate + chi) + 1e-12);
    CHECK(alpha > 1.0);
    CHECK(alpha <= 2.0);
  }

  CHECK_THROWS_AS(choose_alpha(0.5, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(choose_alpha(1.5, 1.0, 0.9), DomainError);
}

TEST_CASE("eb exponent bound runs the full chain") {
  const OptimizerConfig cfg = quick_cfg(5);

  const KrausChannel pinch = computational_pinching();
  const BoundReport rep = eb_exponent_bound(pinch, 10, 1.2, cfg);
  CHECK(rep.components.at("chi") == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rep.exponent > 0.0);
  CHECK(rep.p_succ_bound < 1.0);
  CHECK(rep.p_succ_bound ==
        doctest::Approx(std::exp2(-10.0 * rep.exponent)).epsilon(1e-12));
  // doubling n squares the bound
  const BoundReport rep2 = eb_exponent_bound(pinch, 20, 1.2, cfg);
  CHECK(rep2.p_succ_bound ==
        doctest::Approx(rep.p_succ_bound * rep.p_succ_bound).epsilon(1e-12));

  // completely depolarizing: chi = 0, c = 3 exactly
  const BoundReport dep = eb_exponent_bound(depolarizing(2, 1.0), 8, 0.5, cfg);
  CHECK(dep.components.at("chi") == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(dep.components.at("c") == doctest::Approx(3.0).epsilon(1e-6));
  const double l3 = std::log2(3.0);
  CHECK(dep.exponent == doctest::Approx(0.25 / (32.0 * l3 * l3)).epsilon(1e-4));

  CHECK_THROWS_AS(eb_exponent_bound(pinch, 10, 0.8, cfg), DomainError);
}

TEST_CASE("sqrt-n bound and its threshold") {
  const OptimizerConfig cfg = quick_cfg(7);
  const KrausChannel dep = depolarizing(2, 1.0);  // chi = 0, c = 3

  const BoundReport rep = sqrt_n_bound(dep, 100, 1.5, cfg);
  const double l = rep.components.at("log2_c");
  const double chi = rep.components.at("chi");
  const double rn = 10.0;
  const double oracle =
      rn * (1.0 / (1.0 + 1.0 / rn)) * (1.5 - (chi + 4.0 / rn * l * l));
  CHECK(rep.components.at("total_exponent") ==
        doctest::Approx(oracle).epsilon(1e-10));

  // threshold: exponent crosses zero exactly where R = chi + 4 l^2 / sqrt(n)
  const double n_star = rep.components.at("n_threshold");
  CHECK(n_star == doctest::Approx(std::pow(4.0 * l * l / (1.5 - chi), 2.0))
                      .epsilon(1e-12));
  const double at_threshold = std::sqrt(n_star) *
                              (1.0 / (1.0 + 1.0 / std::sqrt(n_star))) *
                              (1.5 - (chi + 4.0 / std::sqrt(n_star) * l * l));
  CHECK(at_threshold == doctest::Approx(0.0).epsilon(1e-12));

  // sqrt scaling between n and 4n
  const BoundReport rep4 = sqrt_n_bound(dep, 400, 1.5, cfg);
  const double e1 = rep.components.at("total_exponent");
  const double e4 = rep4.components.at("total_exponent");
  const double pred = 20.0 * (20.0 / 21.0) * (1.5 - (chi + 4.0 / 20.0 * l * l));
  CHECK(e4 == doctest::Approx(pred).epsilon(1e-10));
  CHECK(e4 > e1);
}

TEST_CASE("weak converse rate") {
  CHECK(weak_converse_rate(4, 0.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(weak_converse_rate(3, 0.5, 3.0) ==
        doctest::Approx(2.0 + 2.0 / 3.0).epsilon(1e-12));
  double prev = 0.0;
  for (double eps : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    const double r = weak_converse_rate(2, eps, 1.0);
    CHECK(r >= prev);
    prev = r;
  }
  CHECK_THROWS_AS(weak_converse_rate(2, 1.0, 1.0), DomainError);
}

TEST_CASE("pretty good measurement") {
  // orthogonal pure outputs decode perfectly
  const std::vector<DensityMatrix> ortho{DensityMatrix::basis_state(2, 0),
                                         DensityMatrix::basis_state(2, 1)};
  const Povm proj = pgm_decoder(ortho, {0.5, 0.5});
  double p_succ = 0.0;
  for (int m = 0; m < 2; ++m)
    p_succ += 0.5 * (proj.elements[m].matrix() * ortho[m].matrix()).trace().real();
  CHECK(p_succ == doctest::Approx(1.0).epsilon(1e-10));

  // identical outputs give 1/m
  const DensityMatrix rho = random_density(2, 2, 11);
  const std::vector<DensityMatrix> same{rho, rho, rho};
  const Povm flat = pgm_decoder(same, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  double p_same = 0.0;
  for (int m = 0; m < 3; ++m)
    p_same +=
        (flat.elements[m].matrix() * rho.matrix()).trace().real() / 3.0;
  CHECK(p_same == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  // two pure states at |<a|b>|^2 = 1/2: closed-form success (1+sqrt(1/2))/2
  Vector a(2), b(2);
  a << 1.0, 0.0;
  b << std::sqrt(0.5), std::sqrt(0.5);
  const std::vector<DensityMatrix> pair{DensityMatrix::pure(a),
                                        DensityMatrix::pure(b)};
  const Povm two = pgm_decoder(pair, {0.5, 0.5});
  double p_two = 0.0;
  for (int m = 0; m < 2; ++m)
    p_two += 0.5 * (two.elements[m].matrix() * pair[m].matrix()).trace().real();
  CHECK(p_two ==
        doctest::Approx(0.85355339059327376220).epsilon(1e-10));
}

TEST_CASE("code simulation") {
  // noiseless classical bit channel with orthogonal codewords
  const CodeSpec perfect(2, 1.0, basis_ensemble(), 3);
  CHECK(perfect.message_count() == 4);
  const SimulationResult res =
      simulate_code(computational_pinching(), perfect, 4);
  // orthogonal codewords may collide when sampled; every codebook still
  // satisfies p_succ <= 1 and the pinching keeps outputs classical
  for (double v : res.per_codebook) {
    CHECK(v <= 1.0 + 1e-9);
    CHECK(v >= 0.25 - 1e-9);
  }

  // completely depolarizing: success is exactly 1/M
  const CodeSpec blind(2, 1.0, basis_ensemble(), 5);
  const SimulationResult dep = simulate_code(depolarizing(2, 1.0), blind, 3);
  for (double v : dep.per_codebook)
    CHECK(v == doctest::Approx(0.25).epsilon(1e-9));

  // determinism per (seed, codebook index)
  const SimulationResult rerun = simulate_code(depolarizing(2, 1.0), blind, 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(dep.per_codebook[i] == rerun.per_codebook[i]);

  CHECK_THROWS_AS(simulate_code(computational_pinching(),
                                CodeSpec(9, 1.0, basis_ensemble(), 1), 1),
                  DomainError);
}

TEST_CASE("simulated codebooks never beat the generic bound") {
  const OptimizerConfig cfg = quick_cfg(13);
  const KrausChannel pinch = computational_pinching();
  const double alpha = 1.5;
  const double chi_alpha = alpha_holevo(pinch, alpha, cfg);

  const int n = 3;
  const double rate = 1.2;
  const CodeSpec spec(n, rate, basis_ensemble(), 17);
  const SimulationResult sim = simulate_code(pinch, spec, 20);
  const BoundReport bound =
      generic_bound(n, rate, static_cast<double>(n) * chi_alpha, alpha);
  for (double v : sim.per_codebook) CHECK(v <= bound.p_succ_bound + 1e-9);
}
