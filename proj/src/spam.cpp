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

#include "qecho/spam.hpp"

#include <cmath>
#include <stdexcept>

#include "qecho/kernels.hpp"

namespace qecho {

void validate(const PovmSpec& p, double tol) {
  // Eigenvalues of pi0 I + vec(pi) . sigma are pi0 +- |vec(pi)|.
  const double r = std::sqrt(p.pi1 * p.pi1 + p.pi2 * p.pi2 + p.pi3 * p.pi3);
  if (p.pi0 - r < -tol) throw std::invalid_argument("povm: effect is not positive");
  if (1.0 - p.pi0 - r < -tol)
    throw std::invalid_argument("povm: complementary effect is not positive");
}

DensityVec fiducial_state(const FiducialSpec& f, int num_qubits) {
  // Single-qubit pure state, then tensor power.
  CVec psi = {1.0, 0.0};
  const CMat rot = kernels::matmul(rotation_gate(Axis::Y, f.alpha_y),
                                   rotation_gate(Axis::X, f.alpha_x));
  psi = kernels::matvec(rot, psi);
  CMat rho1(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rho1(i, j) = psi[i] * std::conj(psi[j]);
  CMat rho = CMat::identity(1);
  for (int q = 0; q < num_qubits; ++q) rho = kernels::kron(rho, rho1);
  return vectorize(rho);
}

DensityVec measurement_functional(const PovmSpec& p, int num_qubits) {
  validate(p);
  CMat effect1 = CMat(2, 2);
  const CMat base[4] = {pauli_id(), pauli_x(), pauli_y(), pauli_z()};
  const double coeff[4] = {p.pi0, p.pi1, p.pi2, p.pi3};
  for (int k = 0; k < 4; ++k)
    for (size_t i = 0; i < effect1.data.size(); ++i)
      effect1.data[i] += coeff[k] * base[k].data[i];
  CMat effect = CMat::identity(1);
  for (int q = 0; q < num_qubits; ++q) effect = kernels::kron(effect, effect1);
  return vectorize(effect);
}

double spam_wrapped_survival(const Superop& k_prep, const Superop& k_meas,
                             const Superop& cycle, int k, const DensityVec& fiducial,
                             const DensityVec& functional) {
  if (k < 0) throw std::invalid_argument("spam_wrapped_survival: negative cycle count");
  CVec v = kernels::matvec(k_prep, fiducial);
  for (int i = 0; i < k; ++i) v = kernels::matvec(cycle, v);
  v = kernels::matvec(k_meas, v);
  return inner(functional, v).real();
}

}  // namespace qecho
