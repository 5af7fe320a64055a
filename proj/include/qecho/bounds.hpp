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

#ifndef QECHO_BOUNDS_HPP
#define QECHO_BOUNDS_HPP

/// Rigorous error bounds on the first-order Magnus treatment.
///
/// With x = integral of ||dissipator|| over the forward circuit and
/// y = integral of ||dissipator - i*coherent_error_L|| over the echo cycle,
/// the linearization error of the state-level estimate obeys
/// |eps_inc + <Omega_1>| <= e^x - x - 1, and the cycle propagator obeys
/// ||realize(cycle) - exp(chi)|| <= 2(e^y - y - 1).  Both right-hand sides
/// depend only on norm integrals, which is what makes them scalable: they are
/// computable for circuits far too large to simulate.

#include "qecho/liouville.hpp"
#include "qecho/propagation.hpp"

namespace qecho {

struct BoundReport {
  double noise_integral = 0.0;       // sum over forward segments of ||L|| * duration
  double total_integral = 0.0;       // sum over cycle segments of ||L - i dH_L|| * duration
  double linearization_bound = 0.0;  // e^x - x - 1 of noise_integral
  double cycle_bound = 0.0;          // 2 (e^y - y - 1) of total_integral
};

/// Norm integrals and closed-form bounds.  Spectral norms are deduplicated by
/// matrix content, so circuits whose segments share a dissipator pay for one
/// decomposition.
BoundReport compute_bounds(const NoisyCircuit& c);

/// The two closed forms, exposed for direct evaluation on given integrals.
double linearization_bound_of(double noise_integral);
double cycle_bound_of(double total_integral);

struct BoundVerification {
  double lhs_state = 0.0;       // |eps_inc + <<rho0|Omega_1|rho0>>|
  double rhs_state = 0.0;       // linearization_bound
  double lhs_generator = 0.0;   // ||realize(cycle, full) - exp(chi)||
  double rhs_generator = 0.0;   // cycle_bound
  bool state_holds = false;
  bool generator_holds = false;
};

/// Checks both inequalities exactly (dense exponentials and spectral norms),
/// which is feasible only at small size; the `holds` flags allow a relative
/// slack of 1e-9 for floating-point noise on saturated bounds.
BoundVerification verify_bounds(const NoisyCircuit& c, const DensityVec& rho0);

/// Same check with the expensive realizations supplied by the caller (so a
/// fixture that already built them does not pay twice).  ideal_fwd/noise_fwd
/// are forward-circuit realizations; cycle_full is the echo cycle's.
BoundVerification verify_bounds_with(const NoisyCircuit& c, const DensityVec& rho0,
                                     const Superop& ideal_fwd, const Superop& noise_fwd,
                                     const Superop& cycle_full);

}  // namespace qecho

#endif  // QECHO_BOUNDS_HPP
