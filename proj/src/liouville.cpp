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

#include "qecho/liouville.hpp"

#include <cmath>
#include <stdexcept>

#include "qecho/kernels.hpp"

namespace qecho {

HilbertOp pauli_id() { return CMat::identity(2); }

HilbertOp pauli_x() {
  HilbertOp m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

HilbertOp pauli_y() {
  HilbertOp m(2, 2);
  m(0, 1) = cdouble(0.0, -1.0);
  m(1, 0) = cdouble(0.0, 1.0);
  return m;
}

HilbertOp pauli_z() {
  HilbertOp m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

HilbertOp sigma_minus() {
  HilbertOp m(2, 2);
  m(0, 1) = 1.0;
  return m;
}

HilbertOp sigma_plus() {
  HilbertOp m(2, 2);
  m(1, 0) = 1.0;
  return m;
}

HilbertOp hadamard_gate() {
  const double s = 1.0 / std::sqrt(2.0);
  HilbertOp m(2, 2);
  m(0, 0) = s;
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 1) = -s;
  return m;
}

HilbertOp rotation_gate(Axis axis, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  HilbertOp w;
  switch (axis) {
    case Axis::X: w = pauli_x(); break;
    case Axis::Y: w = pauli_y(); break;
    case Axis::Z: w = pauli_z(); break;
  }
  HilbertOp m = CMat::identity(2);
  for (size_t i = 0; i < m.data.size(); ++i)
    m.data[i] = c * m.data[i] - cdouble(0.0, s) * w.data[i];
  return m;
}

DensityVec vectorize(const HilbertOp& op) {
  if (op.rows != op.cols) throw std::invalid_argument("vectorize: square operator required");
  return op.data;  // row-major storage already is the row-major vectorization
}

HilbertOp devectorize(const DensityVec& v, int dim) {
  if (static_cast<size_t>(dim) * dim != v.size())
    throw std::invalid_argument("devectorize: length is not dim^2");
  HilbertOp op(dim, dim);
  op.data = v;
  return op;
}

Superop liouville_hamiltonian(const HilbertOp& h, double tol) {
  if (h.rows != h.cols) throw std::invalid_argument("liouville_hamiltonian: square required");
  if (hermiticity_defect(h) > tol * (1.0 + norm_max(h)))
    throw std::invalid_argument("liouville_hamiltonian: Hamiltonian is not Hermitian");
  const int n = h.rows;
  const CMat id = CMat::identity(n);
  Superop out = kernels::kron(h, id);
  const CMat right = kernels::kron(id, transpose(h));
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] -= right.data[i];
  return out;
}

Superop unitary_superoperator(const HilbertOp& u, double tol) {
  if (u.rows != u.cols) throw std::invalid_argument("unitary_superoperator: square required");
  const CMat probe = kernels::matmul(adjoint(u), u);
  if (deviation_from_identity(probe) > tol)
    throw std::invalid_argument("unitary_superoperator: input is not unitary");
  return kernels::kron(u, conjugate(u));
}

cdouble inner(const DensityVec& a, const DensityVec& b) { return dot_conj(a, b); }

double fidelity(const DensityVec& ideal_pure, const DensityVec& state) {
  const cdouble purity = inner(ideal_pure, ideal_pure);
  if (std::abs(purity - cdouble(1.0)) > 1e-10)
    throw std::invalid_argument("fidelity: ideal state is not pure/normalized");
  return inner(ideal_pure, state).real();
}

Superop lindblad_dissipator(const std::vector<HilbertOp>& jumps) {
  if (jumps.empty()) throw std::invalid_argument("lindblad_dissipator: no jump operators");
  const int n = jumps.front().rows;
  const CMat id = CMat::identity(n);
  Superop out(n * n, n * n);
  for (const HilbertOp& j : jumps) {
    if (j.rows != n || j.cols != n)
      throw std::invalid_argument("lindblad_dissipator: jump dimension mismatch");
    const CMat jj = kernels::matmul(adjoint(j), j);  // J^dagger J
    const CMat hop = kernels::kron(j, conjugate(j));
    const CMat left = kernels::kron(jj, id);
    const CMat right = kernels::kron(id, transpose(jj));
    for (size_t i = 0; i < out.data.size(); ++i)
      out.data[i] += hop.data[i] - 0.5 * (left.data[i] + right.data[i]);
  }
  return out;
}

Superop dephasing_dissipator(int num_qubits) {
  std::vector<HilbertOp> jumps;
  jumps.reserve(num_qubits);
  for (int q = 0; q < num_qubits; ++q) jumps.push_back(embed(pauli_z(), {q}, num_qubits));
  return lindblad_dissipator(jumps);
}

Superop damping_dissipator(int num_qubits) {
  std::vector<HilbertOp> jumps;
  jumps.reserve(num_qubits);
  for (int q = 0; q < num_qubits; ++q) jumps.push_back(embed(sigma_minus(), {q}, num_qubits));
  return lindblad_dissipator(jumps);
}

HilbertOp embed(const HilbertOp& op, const std::vector<int>& targets, int num_qubits) {
  const int k = static_cast<int>(targets.size());
  const int opdim = 1 << k;
  if (op.rows != opdim || op.cols != opdim)
    throw std::invalid_argument("embed: operator dimension does not match target count");
  for (int t : targets) {
    if (t < 0 || t >= num_qubits) throw std::invalid_argument("embed: target out of range");
    int seen = 0;
    for (int u : targets) seen += (u == t);
    if (seen != 1) throw std::invalid_argument("embed: duplicate target qubit");
  }

  const int dim = 1 << num_qubits;
  HilbertOp out(dim, dim);
  // Qubit q owns bit (num_qubits-1-q) of a basis index; targets[m] carries
  // bit (k-1-m) of the small operator's index.
  auto small_index = [&](int big) {
    int r = 0;
    for (int m = 0; m < k; ++m) {
      const int bit = (big >> (num_qubits - 1 - targets[m])) & 1;
      r |= bit << (k - 1 - m);
    }
    return r;
  };
  for (int row = 0; row < dim; ++row) {
    const int r = small_index(row);
    for (int c = 0; c < opdim; ++c) {
      // Column index: copy `row`, then overwrite target bits with those of c.
      int col = row;
      for (int m = 0; m < k; ++m) {
        const int pos = num_qubits - 1 - targets[m];
        const int bit = (c >> (k - 1 - m)) & 1;
        col = (col & ~(1 << pos)) | (bit << pos);
      }
      out(row, col) = op(r, c);
    }
  }
  return out;
}

DensityVec basis_density(int num_qubits, uint64_t bits) {
  const int dim = 1 << num_qubits;
  if (bits >= static_cast<uint64_t>(dim))
    throw std::invalid_argument("basis_density: state index out of range");
  DensityVec v(static_cast<size_t>(dim) * dim, cdouble(0.0));
  v[bits * dim + bits] = 1.0;
  return v;
}

DensityVec trace_functional(int dim) {
  DensityVec v(static_cast<size_t>(dim) * dim, cdouble(0.0));
  for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i) * dim + i] = 1.0;
  return v;
}

}  // namespace qecho
