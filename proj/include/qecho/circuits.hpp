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

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qecho/propagation.hpp"
#include "qecho/rng.hpp"

namespace qecho {

/// Error model shared by all compiled gates:
///  - every quarter-turn X/Y rotation picks up an extra exp(-i theta Z) on
///    its qubit (on the side facing the rest of the circuit);
///  - the cross-resonance segment carries an unwanted eta * Z_c Z_t term;
///  - during continuous segments all register qubits are subject to
///    xi * (dephasing_weight * D + damping_weight * A), with D the uniform
///    dephasing dissipator and A the uniform amplitude-damping dissipator.
/// Z rotations and the GHZ Hadamard are taken error-free.
struct ErrorParams {
  double theta = 0.0;
  double eta = 0.0;
  double xi = 0.0;
  double dephasing_weight = 1.0;
  double damping_weight = 0.1;
};

/// xi * (w_deph * D + w_damp * A) on the full register; all-zero when xi = 0.
Superop register_dissipator(int num_qubits, const ErrorParams& p);

/// Faulty quarter rotation about X or Y.
///  R_W(+pi/2) is realized as exp(-i theta Z) R_W(+pi/2);
///  R_W(-pi/2) is realized as R_W(-pi/2) exp(+i theta Z).
/// The recorded inverse realization is the faulty realization of the
/// opposite-sign gate, so playing gate then inverse leaves the theta phases
/// to cancel through the echo.
InstantGate erroneous_rotation(Axis axis, bool positive, double theta, int qubit,
                               int num_qubits);

/// Error-free instantaneous Z rotation.
InstantGate rz_instant(double angle, int qubit, int num_qubits);

/// Error-free instantaneous Hadamard.
InstantGate hadamard_instant(int qubit, int num_qubits);

/// Duration of the cross-resonance segment.
inline constexpr double kCrDuration = M_PI / 4.0;

/// The native CNOT block: R_Z(-pi/2) on the control, the cross-resonance
/// segment exp(-i (Z_c X_t + eta Z_c Z_t) T + L T) with T = pi/4, and a
/// faulty R_X(-pi/2) on the target.
std::vector<CircuitElement> cross_resonance_cnot(int control, int target, int num_qubits,
                                                 const ErrorParams& p);

/// The CNOT block as a standalone circuit.
NoisyCircuit cnot_circuit(int control, int target, int num_qubits, const ErrorParams& p);

/// Five-qubit GHZ preparation: Hadamard on qubit 0 followed by the CNOT
/// chain (0,1), (1,2), (2,3), (3,4).
NoisyCircuit ghz_circuit(const ErrorParams& p);

// ---- Clifford sequences ----

enum class GateKind : uint8_t { RxPlus, RxMinus, RyPlus, RyMinus, Cnot };

/// One entry of a compiled Clifford sequence.  For rotations q0 is the
/// qubit; for Cnot, q0 is the control and q1 the target.  `inverted` marks a
/// CNOT block that must be compiled as the pulse inverse of the native block
/// (used when a sequence is played backwards).
struct GateSpec {
  GateKind kind;
  int8_t q0 = 0;
  int8_t q1 = -1;
  bool inverted = false;
};

/// Ideal unitary of a gate list (product in time order, global phase
/// included as accumulated).
HilbertOp ideal_unitary(const std::vector<GateSpec>& gates, int num_qubits);

/// Compile a gate list against an error model.
NoisyCircuit compile_sequence(const std::vector<GateSpec>& gates, int num_qubits,
                              const ErrorParams& p);

struct CliffordElement {
  std::vector<GateSpec> gates;
  HilbertOp net_ideal;  // cached ideal product, 4 x 4
};

/// The 11,520-element two-qubit Clifford group, enumerated through the
/// class decomposition
///   [single-qubit] (24*24) + [CNOT] (24*24*9) + [iSWAP] (24*24*9)
///   + [SWAP] (24*24),
/// with single-qubit factors compiled to shortest quarter-turn sequences and
/// the entangling representatives compiled to native CNOT blocks.  Elements
/// are keyed by their conjugation action on the fifteen non-identity Pauli
/// operators, which separates all group elements regardless of global phase;
/// the build asserts that all 11,520 keys are distinct.
class CliffordTable {
 public:
  static constexpr int kGroupSize = 11520;

  /// Enumerate the group from scratch.
  static CliffordTable build(int max_sequence_length = 40);

  /// Load from a cache file if present, otherwise build (and write the cache
  /// when a path is given).  Loaded tables are re-validated in full.
  static CliffordTable load_or_build(const std::string& cache_path,
                                     int max_sequence_length = 40);

  void save(const std::string& path) const;

  int size() const { return static_cast<int>(elements_.size()); }
  const CliffordElement& element(int i) const { return elements_.at(i); }

  /// Uniform draw.  Elements are laid out class-by-class, so a uniform index
  /// is exactly the class-size-weighted draw over the decomposition.
  int sample_index(Rng& rng) const;
  const CliffordElement& sample(Rng& rng) const { return elements_[sample_index(rng)]; }

  /// Index of the element equal to `u` up to global phase.  Throws if `u` is
  /// not a two-qubit Clifford or is missing from the table.
  int find_index(const HilbertOp& u) const;

  /// Index of the element realizing the ideal inverse of element i.
  int inverse_index(int i) const;

  /// Sequence that plays element `e` backwards with the faulty realizations
  /// of the inverted gates; its net ideal is the adjoint of e's.
  static CliffordElement inverse_sequence(const CliffordElement& e);

 private:
  std::vector<CliffordElement> elements_;
  std::unordered_map<std::string, int> index_;  // Pauli-action key -> element
};

/// min over global phase of ||a - e^{i phi} b||_max; the comparison used for
/// ideal-unitary identities throughout the tests.
double phase_distance(const CMat& a, const CMat& b);

}  // namespace qecho
