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

#include <vector>

#include "qecho/cmatrix.hpp"

namespace qecho {

// Density operators are handled as vectors: an N x N operator rho becomes a
// length-N^2 column |rho>> by row-major vectorization, so that
//   vec(A rho B) = (A ⊗ B^T) vec(rho).
// Maps on operators ("superoperators") are then ordinary N^2 x N^2 matrices
// and time evolution is matrix arithmetic.  The pairing between two
// vectorized operators is <<A|B>> = Tr[A^dagger B].
//
// Qubit convention: qubit 0 is the leftmost tensor factor, i.e. the most
// significant bit of a computational-basis index.

/// Operator on the N-dimensional Hilbert space (N x N).
using HilbertOp = CMat;
/// Linear map on vectorized operators (N^2 x N^2).
using Superop = CMat;
/// Vectorized operator (length N^2).
using DensityVec = CVec;

// ---- single-qubit building blocks ----

HilbertOp pauli_id();
HilbertOp pauli_x();
HilbertOp pauli_y();
HilbertOp pauli_z();
/// Lowering operator |0><1|.
HilbertOp sigma_minus();
/// Raising operator |1><0|.
HilbertOp sigma_plus();
HilbertOp hadamard_gate();

enum class Axis { X, Y, Z };

/// R_W(angle) = exp(-i * angle * W / 2) for W in {X, Y, Z}.
HilbertOp rotation_gate(Axis axis, double angle);

// ---- vectorization and superoperator constructors ----

/// Row-major vectorization of an operator.
DensityVec vectorize(const HilbertOp& op);

/// Inverse of vectorize; `dim` is the Hilbert-space dimension N.
HilbertOp devectorize(const DensityVec& v, int dim);

/// Commutator action -interpreted on vectorized operators:
/// H_L = H ⊗ I - I ⊗ H^T, so that H_L vec(rho) = vec(H rho - rho H).
/// Requires H Hermitian within `tol`.
Superop liouville_hamiltonian(const HilbertOp& h, double tol = 1e-10);

/// Conjugation action U . U^dagger as a superoperator: U ⊗ conj(U).
/// Requires U unitary within `tol`.
Superop unitary_superoperator(const HilbertOp& u, double tol = 1e-10);

/// Hilbert-Schmidt pairing <<a|b>> = Tr[A^dagger B] of two vectorized operators.
cdouble inner(const DensityVec& a, const DensityVec& b);

/// Fidelity Tr[rho_ideal rho] of a state against a *pure* ideal state,
/// evaluated as the real part of the pairing.  Throws if the ideal state is
/// not pure within 1e-10.
double fidelity(const DensityVec& ideal_pure, const DensityVec& state);

/// Dissipator in vectorized form for a set of jump operators {J}:
///   sum_J [ J ⊗ conj(J) - 1/2 (J^dagger J) ⊗ I - 1/2 I ⊗ (J^dagger J)^T ].
/// Annihilates the trace functional by construction.
Superop lindblad_dissipator(const std::vector<HilbertOp>& jumps);

/// Uniform dephasing on every qubit: jumps {Z_i}, i = 0..n-1.
Superop dephasing_dissipator(int num_qubits);

/// Uniform amplitude damping on every qubit: jumps {sigma_minus on qubit i}.
Superop damping_dissipator(int num_qubits);

/// Embed a k-qubit operator into an n-qubit register.  `targets` lists the
/// register qubits carrying the operator's factors in order; they must be
/// distinct but need not be adjacent or sorted.
HilbertOp embed(const HilbertOp& op, const std::vector<int>& targets, int num_qubits);

/// Vectorized |b><b| for computational-basis state b (qubit 0 = MSB).
DensityVec basis_density(int num_qubits, uint64_t bits);

/// Vectorized identity operator; pairing with it gives the trace.
DensityVec trace_functional(int dim);

}  // namespace qecho
