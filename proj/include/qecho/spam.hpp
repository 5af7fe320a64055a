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

#include "qecho/liouville.hpp"

namespace qecho {

/// Small coherent preparation error: each qubit starts in
/// R_Y(alpha_y) R_X(alpha_x) |0>, instead of |0>.
struct FiducialSpec {
  double alpha_x = 0.0;  // radians
  double alpha_y = 0.0;
};

/// Per-qubit measurement effect Pi = pi0 I + pi1 X + pi2 Y + pi3 Z for the
/// outcome "0".  The ideal projector is (pi0, 0, 0, pi3) = (0.5, 0, 0, 0.5).
struct PovmSpec {
  double pi0 = 0.5;
  double pi1 = 0.0;
  double pi2 = 0.0;
  double pi3 = 0.0;
};

/// Throws unless 0 <= Pi <= I within tolerance (closed-form 2x2 spectrum).
void validate(const PovmSpec& p, double tol = 1e-12);

/// Vectorized fiducial product state (pure).
DensityVec fiducial_state(const FiducialSpec& f, int num_qubits);

/// Vectorized tensor product of the per-qubit effects; pairing a state with
/// it gives the probability of the all-zeros outcome.
DensityVec measurement_functional(const PovmSpec& p, int num_qubits);

/// Survival probability with the full state-preparation-and-measurement
/// chain:  Re <<Pi| K_meas cycle^k K_prep |fiducial>>.
/// `k_prep`/`k_meas` are the realized faulty preparation and measurement
/// sequences; k = 0 gives the pure SPAM survival.
double spam_wrapped_survival(const Superop& k_prep, const Superop& k_meas,
                             const Superop& cycle, int k, const DensityVec& fiducial,
                             const DensityVec& functional);

}  // namespace qecho
