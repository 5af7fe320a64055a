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

#pragma once

#include <variant>
#include <vector>

#include "qecho/liouville.hpp"

namespace qecho {

/// A stretch of continuous evolution under the master equation
///   d/dt |rho>> = ( -i H_L - i dH_L + L ) |rho>>,
/// where H_L and dH_L are the commutator actions of `hamiltonian` and
/// `coherent_error`, and L is the `dissipator`.  All three are constant over
/// the segment.
struct ContinuousSegment {
  HilbertOp hamiltonian;     // intended drive H (Hermitian, N x N)
  HilbertOp coherent_error;  // unwanted Hermitian term dH (zero matrix if none)
  Superop dissipator;        // vectorized noise generator (N^2 x N^2)
  double duration = 0.0;
};

/// A gate taken to act instantaneously.  The ideal unitary, the faulty
/// unitary actually applied when the gate is played forward, and the faulty
/// unitary applied when its inverse is played are all recorded, because a
/// faulty gate and the faulty realization of its inverse generally differ.
struct InstantGate {
  HilbertOp forward_ideal;
  HilbertOp forward_real;
  HilbertOp inverse_real;
};

using CircuitElement = std::variant<ContinuousSegment, InstantGate>;

/// Time-ordered element list; elements[0] acts first.
struct NoisyCircuit {
  int num_qubits = 0;
  std::vector<CircuitElement> elements;

  double total_duration() const;
};

enum class EvolutionMode {
  Full,       // drive + coherent error + dissipator; real instant gates
  Ideal,      // drive only; ideal instant gates
  NoiseOnly,  // drive + dissipator, no coherent error; ideal instant gates
};

/// How segment coherent errors transform under the pulse inverse.  The
/// default leaves them unchanged: reversing the drive does not reverse the
/// error term it drags along.
enum class CoherentErrorPolicy { Unchanged, Negated };

/// Check dimensions, Hermiticity of the Hamiltonian terms, positivity of
/// durations and trace annihilation of dissipators.  Throws on violation.
void validate(const NoisyCircuit& c);

/// Total propagator of the circuit in the requested mode, as one
/// superoperator (elements multiplied in time order, segment generators
/// exponentiated).
Superop realize(const NoisyCircuit& c, EvolutionMode mode);

/// Ideal Hilbert-space unitary of the circuit: the product, in time order, of
/// exp(-i H * duration) for segments and of the ideal instant gates.
HilbertOp ideal_hilbert_unitary(const NoisyCircuit& c);

/// The physically implementable inverse: elements reversed, drives negated,
/// dissipators kept, instant gates swapped for the faulty realization of
/// their inverses.  Applying pulse_inverse twice returns an equivalent of
/// the original circuit.
NoisyCircuit pulse_inverse(const NoisyCircuit& c,
                           CoherentErrorPolicy policy = CoherentErrorPolicy::Unchanged);

/// The circuit followed by its pulse inverse.
NoisyCircuit echo_cycle(const NoisyCircuit& c,
                        CoherentErrorPolicy policy = CoherentErrorPolicy::Unchanged);

/// Leading-order average of the dissipator in the ideal interaction frame:
///   Omega_1 = integral over the circuit of U_L^dagger(t) L(t) U_L(t) dt,
/// with U_L(t) the cumulative ideal propagator.  Instant gates advance the
/// frame only.  The integral over each segment uses fixed-order
/// Gauss-Legendre quadrature; the frame rotation at the nodes is evaluated
/// exactly through the drive's eigenbasis, so the only quadrature error is
/// that of the smooth conjugated integrand.
Superop first_magnus_term(const NoisyCircuit& c, int quad_order = 16);

/// Same frame integral applied to the segments' coherent-error commutator
/// terms instead of the dissipators.
Superop coherent_error_term(const NoisyCircuit& c, int quad_order = 16);

/// Second-order generator estimate for the echo cycle of `c`:
///   chi = 2 Omega_1(c) - i Theta(cycle),
/// so that realize(echo_cycle(c), Full) ~ exp(chi) up to third order.
Superop cycle_magnus_generator(const NoisyCircuit& c, int quad_order = 16);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int order);

}  // namespace qecho
