// Copyright 2026 The qecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECHO_IRB_HPP
#define QECHO_IRB_HPP

/// Interleaved randomized benchmarking: random Clifford sequences (optionally
/// with a fixed target gate inserted after every Clifford), survival decay
/// curves, exponential fits F_l = A alpha^l + B, and the per-gate error
/// number r derived from the reference/interleaved decay-rate ratio.

#include <cstdint>
#include <vector>

#include "qecho/circuits.hpp"
#include "qecho/estimator.hpp"
#include "qecho/propagation.hpp"
#include "qecho/rng.hpp"
#include "qecho/spam.hpp"

namespace qecho {

/// Result of fitting F_l = A alpha^l + B.
struct DecayFit {
  double a = 0.0;
  double b = 0.0;
  double alpha = 1.0;
  double alpha_err = 0.0;  // 1-sigma uncertainty from the linearized covariance
  double rms = 0.0;        // fit residual root-mean-square
  bool degenerate = false; // flat data: alpha unidentifiable
  int iterations = 0;
};

/// Artificial global depolarizing noise injected per gate, used as an exactly
/// solvable oracle: with rates (p_c, p_t) the reference decay is
/// alpha = 1 - p_c and the interleaved decay is (1 - p_c)(1 - p_t).
struct SyntheticDepolarizing {
  bool enabled = false;
  double p_clifford = 0.0;
  double p_target = 0.0;
};

struct RbConfig {
  std::vector<int> lengths;       // strictly increasing, >= 1
  int samples_per_length = 60;
  ShotSpec shots;                 // per-sequence survival sampling; 0 = exact
  ErrorParams errors;             // error model for compiled Cliffords
  bool use_spam = false;          // wrap survivals in fiducial/POVM
  FiducialSpec fiducial;
  PovmSpec povm;
  SyntheticDepolarizing synthetic;
};

/// Default sequence lengths 3 + 15k for k = 0..k_max.
std::vector<int> default_rb_lengths(int k_max = 20);

/// The global depolarizing channel of strength p as a superoperator:
/// rho -> (1-p) rho + p Tr[rho] I / 2^n.
Superop depolarizing_superop(int num_qubits, double p);

/// A drawn sequence: l Clifford indices plus the closing Clifford that makes
/// the ideal net (including any interleaved target) the identity up to phase.
struct RbSequence {
  std::vector<int> clifford_indices;
  int closer = 0;
};

/// Draws l Cliffords and finds the closer.  interleave_ideal, when non-null,
/// is the ideal unitary of the target inserted after every Clifford.
RbSequence rb_sequence(const CliffordTable& table, int length,
                       const HilbertOp* interleave_ideal, Rng& rng);

/// Compiles a drawn sequence into one faulty circuit (the interleave circuit's
/// elements are spliced in after each Clifford when provided).
NoisyCircuit rb_sequence_circuit(const CliffordTable& table, const RbSequence& seq,
                                 const NoisyCircuit* interleave,
                                 const ErrorParams& errors);

struct DecayPoint {
  int length = 0;
  double mean_survival = 0.0;
};

/// Mean survival versus sequence length.  Clifford realizations are cached by
/// table index; the survival of each sequence is a chain of matrix-vector
/// products.  Deterministic given the rng: (length index li, sample s) uses
/// child streams 2*(li*samples+s) for drawing and +1 for shot noise.
std::vector<DecayPoint> decay_curve(const CliffordTable& table, const RbConfig& cfg,
                                    const NoisyCircuit* interleave, Rng& rng);

/// Nonlinear least squares for F_l = A alpha^l + B (Levenberg-Marquardt with
/// numeric Jacobian).  Needs at least 4 points with survivals in [0, 1.05].
/// Flat curves are returned with `degenerate` set instead of a fit.
DecayFit fit_decay(const std::vector<DecayPoint>& points);

struct InterleavedResult {
  double r = 0.0;      // per-target-gate error estimate
  double r_err = 0.0;  // propagated 1-sigma uncertainty
  double r_ave = 0.0;  // average per-Clifford error from the reference decay
};

/// r = (2^n - 1)/2^n * (1 - alpha_int / alpha_ref) with first-order error
/// propagation from the two fit uncertainties.
InterleavedResult interleaved_estimate(const DecayFit& reference,
                                       const DecayFit& interleaved, int num_qubits);

}  // namespace qecho

#endif  // QECHO_IRB_HPP
