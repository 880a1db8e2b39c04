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

#include <algorithm>
#include <cmath>

#include "renyicap/channels.hpp"
#include "test_helpers.hpp"

using namespace renyicap;

namespace {

RealVector sorted_choi_spectrum(const KrausChannel& ch) {
  RealVector ev = herm_eigenvalues(ch.choi().matrix());
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

bool same_nonzero_spectrum(const KrausChannel& a, const KrausChannel& b,
                           double tol = 1e-8) {
  RealVector ea = sorted_choi_spectrum(a);
  RealVector eb = sorted_choi_spectrum(b);
  std::vector<double> na, nb;
  for (Index i = 0; i < ea.size(); ++i)
    if (std::abs(ea(i)) > tol) na.push_back(ea(i));
  for (Index i = 0; i < eb.size(); ++i)
    if (std::abs(eb(i)) > tol) nb.push_back(eb(i));
  if (na.size() != nb.size()) return false;
  for (std::size_t i = 0; i < na.size(); ++i)
    if (std::abs(na[i] - nb[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(test::diag2(0.7, 0.7))),
                  InvariantError);
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(test::diag2(1.2, -0.2))),
                  InvariantError);
  const DensityMatrix rho = random_density(3, 3, 7);
  CHECK(rho.op().real_trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("channel application basics") {
  const KrausChannel id = KrausChannel::identity(2);
  const DensityMatrix rho = random_density(2, 2, 11);
  CHECK(max_abs_diff(id.apply(rho).matrix(), rho.matrix()) < 1e-12);

  const KrausChannel dep = depolarizing(2, 1.0);
  CHECK(max_abs_diff(dep.apply(rho).matrix(), 0.5 * Matrix::Identity(2, 2)) <
        1e-12);

  const KrausChannel random = random_channel(3, 2, 3, 12);
  CHECK(random.is_trace_preserving());
  const DensityMatrix out = random.apply(random_density(3, 2, 13));
  CHECK(out.op().real_trace() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(min_eigenvalue(out.op()) > -1e-10);
}

TEST_CASE("choi operators") {
  const KrausChannel id = KrausChannel::identity(2);
  const HermitianOperator choi_id = id.choi();
  CHECK(choi_id.real_trace() == doctest::Approx(2.0).epsilon(1e-12));
  const RealVector ev = herm_eigenvalues(choi_id.matrix());
  CHECK(ev(ev.size() - 1) == doctest::Approx(2.0).epsilon(1e-12));  // rank one

  const KrausChannel dep = depolarizing(2, 1.0);
  CHECK(max_abs_diff(dep.choi().matrix(), 0.5 * Matrix::Identity(4, 4)) < 1e-12);

  const KrausChannel random = random_channel(3, 3, 4, 21);
  const HermitianOperator reduced =
      partial_trace(random.choi(), {3, 3}, {1});  // trace out the output
  CHECK(max_abs_diff(reduced.matrix(), Matrix::Identity(3, 3)) < 1e-9);
}

TEST_CASE("depolarizing channel") {
  const DensityMatrix zero = DensityMatrix::basis_state(2, 0);
  const KrausChannel half = depolarizing(2, 0.5);
  CHECK(max_abs_diff(half.apply(zero).matrix(), test::diag2(0.75, 0.25)) < 1e-12);

  const KrausChannel none = depolarizing(2, 0.0);
  const DensityMatrix rho = random_density(2, 2, 31);
  CHECK(max_abs_diff(none.apply(rho).matrix(), rho.matrix()) < 1e-12);

  CHECK_THROWS_AS(depolarizing(2, 1.5), DomainError);
}

TEST_CASE("stinespring dilation reconstructs the channel") {
  const KrausChannel id = KrausChannel::identity(2);
  const Isometry triv = id.stinespring();
  CHECK(triv.dim_e == 1);
  CHECK(max_abs_diff(triv.matrix.adjoint() * triv.matrix, Matrix::Identity(2, 2)) <
        1e-12);

  const KrausChannel pinch = pinching(Matrix::Identity(2, 2));
  const Isometry vp = pinch.stinespring();
  CHECK(vp.dim_e == 2);
  CHECK(max_abs_diff(vp.matrix.adjoint() * vp.matrix, Matrix::Identity(2, 2)) <
        1e-12);

  const KrausChannel ch = random_channel(3, 2, 3, 41);
  const Isometry v = ch.stinespring();
  CHECK(max_abs_diff(v.matrix.adjoint() * v.matrix, Matrix::Identity(3, 3)) <
        1e-9);
  for (Index k = 0; k < 3; ++k) {
    const DensityMatrix rho = random_density(3, 2, 42 + k);
    const Matrix lifted = v.matrix * rho.matrix() * v.matrix.adjoint();
    const Matrix back =
        partial_trace(lifted, {v.dim_b, v.dim_e}, {0});
    CHECK(max_abs_diff(back, ch.apply(rho).matrix()) < 1e-9);
  }
}

TEST_CASE("complementary maps") {
  const KrausChannel id = KrausChannel::identity(2);
  const KrausChannel comp = id.complementary();
  CHECK(comp.dim_out() == 1);  // one Kraus operator, trivial environment

  const KrausChannel ch = random_channel(2, 2, 3, 51);
  CHECK(same_nonzero_spectrum(ch.complementary().complementary(), ch));

  // complement of a pinching keeps classical (diagonal-only) outputs
  const KrausChannel pinch = pinching(Matrix::Identity(2, 2));
  const KrausChannel pc = pinch.complementary();
  const DensityMatrix rho = random_density(2, 2, 52);
  const Matrix out = pc.apply(rho).matrix();
  CHECK(std::abs(out(0, 0).real() - rho.matrix()(0, 0).real()) < 1e-10);
  CHECK(std::abs(out(1, 1).real() - rho.matrix()(1, 1).real()) < 1e-10);
}

TEST_CASE("conjugated channels") {
  const KrausChannel ch = random_channel(2, 2, 2, 61);
  const KrausChannel same = ch.conjugated(HermitianOperator::identity(2));
  const DensityMatrix rho = random_density(2, 2, 62);
  CHECK(max_abs_diff(same.apply_matrix(rho.matrix()), ch.apply_matrix(rho.matrix())) <
        1e-12);

  const KrausChannel scaled =
      ch.conjugated(hermitian_unchecked(2.0 * Matrix::Identity(2, 2)));
  CHECK_FALSE(scaled.is_trace_preserving());
  CHECK(max_abs_diff(scaled.apply_matrix(rho.matrix()),
                     4.0 * ch.apply_matrix(rho.matrix())) < 1e-12);

  // conjugation by the on-support inverse undoes itself
  const HermitianOperator x = test::random_psd(2, 63);
  const HermitianOperator x_inv = fractional_power(x, -1.0);
  const KrausChannel round =
      ch.conjugated(x).conjugated(x_inv);
  CHECK(max_abs_diff(round.apply_matrix(rho.matrix()), ch.apply_matrix(rho.matrix())) <
        1e-8);

  CHECK_THROWS_AS(ch.conjugated(HermitianOperator(test::diag2(1.0, -1.0))),
                  DomainError);
}

TEST_CASE("measure-and-prepare channels are entanglement-breaking") {
  // pinching as measure-and-prepare
  std::vector<HermitianOperator> proj{
      HermitianOperator(test::diag2(1.0, 0.0)),
      HermitianOperator(test::diag2(0.0, 1.0))};
  const Povm basis_povm(proj);
  const std::vector<DensityMatrix> outs{DensityMatrix::basis_state(2, 0),
                                        DensityMatrix::basis_state(2, 1)};
  const KrausChannel mp = eb_from_measure_prepare(basis_povm, outs);
  CHECK(mp.is_trace_preserving());
  const DensityMatrix rho = random_density(2, 2, 71);
  const Matrix expect = test::diag2(rho.matrix()(0, 0).real(), rho.matrix()(1, 1).real());
  CHECK(max_abs_diff(mp.apply(rho).matrix(), expect) < 1e-10);

  // trivial POVM gives a constant channel
  std::vector<HermitianOperator> halves{
      hermitian_unchecked(0.5 * Matrix::Identity(2, 2)),
      hermitian_unchecked(0.5 * Matrix::Identity(2, 2))};
  const std::vector<DensityMatrix> two{random_density(2, 2, 72),
                                       random_density(2, 2, 73)};
  const KrausChannel constant = eb_from_measure_prepare(Povm(halves), two);
  const Matrix want = 0.5 * (two[0].matrix() + two[1].matrix());
  CHECK(max_abs_diff(constant.apply(rho).matrix(), want) < 1e-10);

  // random measure-and-prepare certifies EB at 2x2
  const Povm povm = random_povm(2, 2, 74);
  const std::vector<DensityMatrix> prep{random_density(2, 2, 75),
                                        random_density(2, 1, 76)};
  const KrausChannel eb = eb_from_measure_prepare(povm, prep);
  CHECK(eb.is_trace_preserving());
  CHECK(is_eb_small(eb) == EbVerdict::yes);
}

TEST_CASE("eb verdicts") {
  CHECK(is_eb_small(KrausChannel::identity(2)) == EbVerdict::no);
  CHECK(is_eb_small(depolarizing(2, 0.9)) == EbVerdict::yes);
  CHECK(is_eb_small(KrausChannel::identity(3)) == EbVerdict::no);
  // PPT beyond 2x3 cannot be certified
  CHECK(is_eb_small(depolarizing(3, 1.0)) == EbVerdict::inconclusive);

  CHECK(is_eb_interior(depolarizing(2, 0.9)) == EbVerdict::yes);
  CHECK(is_eb_interior(KrausChannel::identity(2)) == EbVerdict::no);
}

TEST_CASE("pinching is idempotent and diagonalizes") {
  const KrausChannel pinch = pinching(Matrix::Identity(3, 3));
  const DensityMatrix rho = random_density(3, 3, 81);
  const Matrix once = pinch.apply(rho).matrix();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(once(i, j)) < 1e-12);
  CHECK(max_abs_diff(pinch.apply(pinch.apply(rho)).matrix(), once) < 1e-12);

  Matrix not_unitary = Matrix::Identity(2, 2);
  not_unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(pinching(not_unitary), DomainError);
}

TEST_CASE("smoothing a channel keeps its reduced action at p = 0") {
  // dephasing qubit channel (a Hadamard channel)
  std::vector<Matrix> dk{std::sqrt(0.7) * Matrix::Identity(2, 2),
                         std::sqrt(0.3) * test::diag2(1.0, -1.0)};
  const KrausChannel deph(2, 2, dk);
  const KrausChannel m0 = smooth_hadamard(deph, 0.0);
  CHECK(m0.dim_out() == 2 * 4);
  for (Index k = 0; k < 2; ++k) {
    const DensityMatrix rho = random_density(2, 2, 91 + k);
    const Matrix big = m0.apply(rho).matrix();
    const Matrix reduced = partial_trace(big, {2, 4}, {0});
    CHECK(max_abs_diff(reduced, deph.apply(rho).matrix()) < 1e-8);
  }

  // p = 1: complement spectrum equals (constant-to-pi after complement)
  const KrausChannel m1 = smooth_hadamard(deph, 1.0);
  const KrausChannel lhs = m1.complementary();
  const KrausChannel rhs = depolarizing(2, 1.0).compose(deph.complementary());
  CHECK(same_nonzero_spectrum(lhs, rhs));

  // p > 0 pushes the complement into the certified EB region
  const KrausChannel mp = smooth_hadamard(deph, 0.1);
  CHECK(is_eb_small(mp.complementary()) == EbVerdict::yes);
  CHECK(same_nonzero_spectrum(mp.complementary(),
                              depolarizing(2, 0.1).compose(deph.complementary())));
}

TEST_CASE("informationally complete povm distinguishes states") {
  const Povm ic = ic_povm(2, 5);
  CHECK(ic.size() == 4);
  Matrix sum = Matrix::Zero(2, 2);
  for (const auto& e : ic.elements) sum += e.matrix();
  CHECK(max_abs_diff(sum, Matrix::Identity(2, 2)) < 1e-9);

  const DensityMatrix rho = random_density(2, 2, 92);
  const auto pr = ic.measure(rho);
  const auto ps = ic.measure(rho);
  for (std::size_t i = 0; i < pr.size(); ++i) CHECK(pr[i] == ps[i]);

  // well-separated states give visibly different statistics
  const DensityMatrix sigma = random_density(2, 2, 93);
  CHECK(trace_distance(rho, sigma) >= 0.01);
  const auto qs = ic.measure(sigma);
  double max_gap = 0.0;
  for (std::size_t i = 0; i < qs.size(); ++i)
    max_gap = std::max(max_gap, std::abs(qs[i] - pr[i]));
  CHECK(max_gap > 1e-4);
}

TEST_CASE("cq states") {
  const Ensemble ens({0.25, 0.75},
                     {DensityMatrix::basis_state(2, 0), test::plus_state()});
  const KrausChannel dep = depolarizing(2, 1.0);
  const CqState cq = make_cq_state(ens, dep);
  for (const auto& cond : cq.conditionals)
    CHECK(max_abs_diff(cond.matrix(), 0.5 * Matrix::Identity(2, 2)) < 1e-12);
  CHECK(cq.flatten().op().real_trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random samplers are deterministic and well formed") {
  const DensityMatrix pure = random_pure(3, 101);
  const Matrix sq = pure.matrix() * pure.matrix();
  CHECK(sq.trace().real() == doctest::Approx(1.0).epsilon(1e-10));

  const DensityMatrix rank2 = random_density(4, 2, 102);
  const RealVector ev = herm_eigenvalues(rank2.matrix());
  int nonzero = 0;
  for (Index i = 0; i < 4; ++i)
    if (ev(i) > 1e-10) ++nonzero;
  CHECK(nonzero == 2);

  const KrausChannel ch = random_channel(2, 3, 2, 103);
  Matrix acc = Matrix::Zero(2, 2);
  for (const auto& a : ch.kraus()) acc += a.adjoint() * a;
  CHECK(operator_norm(acc - Matrix::Identity(2, 2)) < 1e-9);

  const DensityMatrix again = random_pure(3, 101);
  CHECK(max_abs_diff(again.matrix(), pure.matrix()) == 0.0);
}

TEST_CASE("compressed channels act identically") {
  const Povm povm = random_povm(2, 3, 111);
  const std::vector<DensityMatrix> prep{random_density(2, 2, 112),
                                        random_density(2, 2, 113),
                                        random_density(2, 1, 114)};
  const KrausChannel eb = eb_from_measure_prepare(povm, prep);
  const KrausChannel small = eb.compressed();
  CHECK(small.kraus().size() <= 4);
  for (Index k = 0; k < 3; ++k) {
    const DensityMatrix rho = random_density(2, 2, 115 + k);
    CHECK(max_abs_diff(small.apply(rho).matrix(), eb.apply(rho).matrix()) < 1e-9);
  }
}
