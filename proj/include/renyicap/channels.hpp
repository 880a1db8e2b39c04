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
#include <vector>

#include "renyicap/linalg.hpp"

namespace renyicap {

/// PSD within 1e-10 and unit trace within 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op, double tol = 1e-10);

  static DensityMatrix maximally_mixed(Index dim);
  /// Projector onto a vector; normalizes the input.
  static DensityMatrix pure(const Vector& psi);
  /// Computational basis state |k><k|.
  static DensityMatrix basis_state(Index dim, Index k);

  Index dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }

 private:
  HermitianOperator op_;
};

/// Half the trace norm of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Input ensemble {p(x), rho_x}: probabilities nonnegative, summing to one
/// within 1e-10, all states on a common space.
struct Ensemble {
  std::vector<double> probs;
  std::vector<DensityMatrix> states;

  Ensemble(std::vector<double> p, std::vector<DensityMatrix> s);

  std::size_t size() const { return probs.size(); }
  Index state_dim() const { return states.front().dim(); }
  /// Probability-weighted average state.
  DensityMatrix average() const;
};

/// Classical-quantum state sum_x p(x)|x><x| (x) rho_x in block-diagonal form.
struct CqState {
  std::vector<int> labels;
  std::vector<double> probs;
  std::vector<DensityMatrix> conditionals;

  /// The block-diagonal joint density matrix on the |X| * d space.
  DensityMatrix flatten() const;
};

/// Stinespring dilation V: A -> B (x) E with V = sum_x A_x (x) |x>_E.
struct Isometry {
  Matrix matrix;  // (dim_b * dim_e) x dim_a
  Index dim_b = 0;
  Index dim_e = 0;
};

/// Measurement: PSD elements summing to the identity within 1e-9.
struct Povm {
  std::vector<HermitianOperator> elements;

  explicit Povm(std::vector<HermitianOperator> els);

  std::size_t size() const { return elements.size(); }
  Index dim() const { return elements.front().dim(); }
  /// Outcome distribution Tr{M_x rho}.
  std::vector<double> measure(const DensityMatrix& rho) const;
};

/// Completely positive map in Kraus form. Trace preservation is detected at
/// construction (||sum A^dag A - I|| <= 1e-9) and kept as a flag so that
/// conjugated, non-trace-preserving maps flow through the same type.
class KrausChannel {
 public:
  KrausChannel(Index dim_in, Index dim_out, std::vector<Matrix> kraus);

  static KrausChannel identity(Index dim);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  bool is_trace_preserving() const { return trace_preserving_; }

  /// Channel action on a state; requires a trace-preserving channel.
  DensityMatrix apply(const DensityMatrix& rho) const;

  /// CP action sum_k A X A^dag on an arbitrary operator, no TP requirement.
  Matrix apply_matrix(const Matrix& x) const;

  /// Output sum_k (A_k psi)(A_k psi)^dag of a pure input, as a plain
  /// Hermitian matrix. Hot path for the output-norm optimizers.
  Matrix apply_pure(const Vector& psi) const;

  /// Choi operator (this (x) id)(|gamma><gamma|) with unnormalized
  /// |gamma> = sum_i |i>|i>, laid out output (x) input.
  HermitianOperator choi() const;

  /// Stinespring dilation; requires trace preservation.
  Isometry stinespring() const;

  /// The map to the environment of a dilation built from this Kraus list;
  /// output dimension equals the number of Kraus operators.
  KrausChannel complementary() const;

  /// The map rho -> X ch(rho) X with PSD X (Kraus set {X A_k}); generally
  /// not trace-preserving.
  KrausChannel conjugated(const HermitianOperator& x) const;

  /// Parallel composition (this (x) other).
  KrausChannel tensor(const KrausChannel& other) const;

  /// Serial composition this(other(.)).
  KrausChannel compose(const KrausChannel& other) const;

  /// Equivalent channel with a minimal Kraus set, read off the Choi
  /// eigendecomposition. Action is unchanged; the complement is not.
  KrausChannel compressed(double tol = 1e-12) const;

 private:
  Index dim_in_;
  Index dim_out_;
  std::vector<Matrix> kraus_;
  bool trace_preserving_;
};

enum class EbVerdict { yes, no, inconclusive };

/// PPT test on the Choi operator. Decisive (yes/no) only when
/// dim_in * dim_out <= 6; larger PPT channels come back inconclusive.
EbVerdict is_eb_small(const KrausChannel& ch, double tol = 1e-9);

/// Interior-of-the-EB-set heuristic: Choi full rank and partial-transpose
/// minimum eigenvalue above `margin`, decisive only at 2x2. Flagged as
/// inconclusive elsewhere.
EbVerdict is_eb_interior(const KrausChannel& ch, double margin = 1e-3);

/// Measure-and-prepare channel X -> sum_x N_x Tr{M_x X} with rank-one Kraus
/// operators built from the eigendecompositions of the POVM elements and the
/// output states.
KrausChannel eb_from_measure_prepare(const Povm& povm,
                                     const std::vector<DensityMatrix>& outputs);

/// rho -> (1-p) rho + p Tr{rho} I/d, with the full d^2-element Weyl Kraus
/// set (kept at fixed size for the smoothing construction).
KrausChannel depolarizing(Index d, double p);

/// Environment-smoothed channel M_p: A -> B (x) F obtained by dilating a
/// depolarizing map on the environment of `nh`; |F| = |E|^2. At p = 0,
/// tracing out F recovers `nh`.
KrausChannel smooth_hadamard(const KrausChannel& nh, double p);

/// Pinching onto the eigenbasis given by the columns of a unitary.
KrausChannel pinching(const Matrix& basis);

/// Informationally complete POVM with d^2 rank-one elements; the Gram matrix
/// of the elements has full rank d^2 (verified, resampling up to 10 times).
Povm ic_povm(Index d, std::uint64_t seed);

/// Joint classical-quantum state of an ensemble pushed through a channel.
CqState make_cq_state(const Ensemble& ens, const KrausChannel& ch);

DensityMatrix random_pure(Index d, std::uint64_t seed);
DensityMatrix random_density(Index d, Index rank, std::uint64_t seed);
/// Haar-flavored channel: a column-orthonormalized Gaussian block matrix
/// sliced into `kraus_count` Kraus operators.
KrausChannel random_channel(Index d_in, Index d_out, int kraus_count,
                            std::uint64_t seed);
Povm random_povm(Index d, int outcomes, std::uint64_t seed);

}  // namespace renyicap
