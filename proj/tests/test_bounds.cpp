// Copyright 2026 The qecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "qecho/bounds.hpp"
#include "qecho/circuits.hpp"
#include "qecho/eig.hpp"
#include "qecho/kernels.hpp"
#include "qecho/liouville.hpp"
#include "qecho/propagation.hpp"
#include "qecho/rng.hpp"

using namespace qecho;

namespace {

ContinuousSegment make_segment(const HilbertOp& h, const HilbertOp& dh, const Superop& d,
                               double dur) {
  ContinuousSegment s;
  s.hamiltonian = h;
  s.coherent_error = dh;
  s.dissipator = d;
  s.duration = dur;
  return s;
}

Superop scaled(const Superop& d, double s) {
  Superop out = d;
  for (auto& z : out.data) z *= s;
  return out;
}

// One-qubit circuit with drive, a small coherent error on the first segment,
// and dephasing noise throughout.
NoisyCircuit noisy_one_qubit(double error_scale, double noise_scale) {
  NoisyCircuit c;
  c.num_qubits = 1;
  Superop noise = scaled(dephasing_dissipator(1), noise_scale);
  HilbertOp dh = cdouble(error_scale) * pauli_z();
  c.elements.push_back(make_segment(cdouble(0.5) * pauli_x(), dh, noise, 0.8));
  c.elements.push_back(make_segment(cdouble(0.7) * pauli_z(), CMat::zeros(2, 2), noise, 0.5));
  return c;
}

}  // namespace

TEST_CASE("the closed forms are e^x - x - 1 and twice that") {
  for (double x : {0.0, 0.01, 0.05, 0.3, 1.0, 2.5}) {
    CHECK(linearization_bound_of(x) ==
          doctest::Approx(std::exp(x) - x - 1.0).epsilon(1e-12));
    CHECK(cycle_bound_of(x) == doctest::Approx(2.0 * linearization_bound_of(x)).epsilon(1e-14));
  }
}

TEST_CASE("the closed forms are quadratic at small argument") {
  // e^x - x - 1 = x^2/2 + O(x^3): the leading coefficient identifies the form.
  double x = 1e-4;
  CHECK(linearization_bound_of(x) / (x * x) == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(cycle_bound_of(x) / (x * x) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("the closed forms are increasing and convex on a grid") {
  double prev = linearization_bound_of(0.0);
  double prev_gap = 0.0;
  for (int i = 1; i <= 40; ++i) {
    double cur = linearization_bound_of(0.05 * i);
    double gap = cur - prev;
    CHECK(gap > 0.0);
    CHECK(gap > prev_gap);  // convexity: increments grow
    prev = cur;
    prev_gap = gap;
  }
}

TEST_CASE("norm integrals of a hand-sized circuit are exact") {
  // One segment, dissipator 0.025 * (dephasing generator): the generator's
  // eigenvalues are {0, -2} blocks, so the norm is exactly 0.05 and one
  // second of evolution integrates to 0.05.  The echo cycle repeats the
  // segment (noise is not inverted), doubling the integral.
  NoisyCircuit c;
  c.num_qubits = 1;
  c.elements.push_back(make_segment(cdouble(0.3) * pauli_z(), CMat::zeros(2, 2),
                                    scaled(dephasing_dissipator(1), 0.025), 1.0));
  BoundReport r = compute_bounds(c);
  CHECK(r.noise_integral == doctest::Approx(0.05).epsilon(1e-11));
  CHECK(r.total_integral == doctest::Approx(0.10).epsilon(1e-11));
  CHECK(r.linearization_bound ==
        doctest::Approx(std::exp(0.05) - 1.05).epsilon(1e-11));
  CHECK(r.cycle_bound ==
        doctest::Approx(2.0 * (std::exp(0.10) - 1.10)).epsilon(1e-11));
}

TEST_CASE("coherent errors enter the cycle integral but not the noise integral") {
  // A pure coherent error 0.1 X over one second: its commutator generator has
  // norm 0.2, the echo cycle carries it twice, and there is no dissipator.
  NoisyCircuit c;
  c.num_qubits = 1;
  c.elements.push_back(make_segment(cdouble(0.5) * pauli_x(),
                                    cdouble(0.1) * pauli_x(), Superop(4, 4), 1.0));
  BoundReport r = compute_bounds(c);
  CHECK(r.noise_integral == 0.0);
  CHECK(r.linearization_bound == 0.0);
  CHECK(r.total_integral == doctest::Approx(0.4).epsilon(1e-11));
}

TEST_CASE("repeated segments accumulate linearly in the integrals") {
  NoisyCircuit one;
  one.num_qubits = 1;
  Superop d = scaled(damping_dissipator(1), 0.02);
  one.elements.push_back(make_segment(cdouble(0.4) * pauli_y(), CMat::zeros(2, 2), d, 0.7));
  NoisyCircuit five = one;
  for (int i = 0; i < 4; ++i) five.elements.push_back(one.elements[0]);
  BoundReport r1 = compute_bounds(one);
  BoundReport r5 = compute_bounds(five);
  CHECK(r5.noise_integral == doctest::Approx(5.0 * r1.noise_integral).epsilon(1e-12));
  CHECK(r5.total_integral == doctest::Approx(5.0 * r1.total_integral).epsilon(1e-12));
  // And the one-segment integral agrees with a direct norm evaluation.
  CHECK(r1.noise_integral == doctest::Approx(spectral_norm(d) * 0.7).epsilon(1e-12));
}

TEST_CASE("an error-free circuit verifies trivially") {
  NoisyCircuit c;
  c.num_qubits = 1;
  c.elements.push_back(make_segment(cdouble(0.4) * pauli_x(), CMat::zeros(2, 2),
                                    Superop(4, 4), 0.9));
  BoundReport r = compute_bounds(c);
  CHECK(r.noise_integral == 0.0);
  CHECK(r.total_integral == 0.0);
  CHECK(r.linearization_bound == 0.0);
  CHECK(r.cycle_bound == 0.0);
  BoundVerification v = verify_bounds(c, basis_density(1, 0));
  CHECK(v.state_holds);
  CHECK(v.generator_holds);
  CHECK(v.lhs_state < 1e-12);
  CHECK(v.lhs_generator < 1e-12);
}

TEST_CASE("both inequalities hold on random noisy one-qubit circuits") {
  Rng rng(1101);
  for (int trial = 0; trial < 6; ++trial) {
    double xi = 0.01 + 0.02 * rng.uniform();
    double err = 0.02 * rng.uniform();
    NoisyCircuit c = noisy_one_qubit(err, xi);
    DensityVec rho0 = basis_density(1, trial % 2);
    BoundVerification v = verify_bounds(c, rho0);
    CHECK(v.state_holds);
    CHECK(v.generator_holds);
    // The checks are not vacuous: the right-hand sides are strictly positive
    // and the generator deviation is a real number of the expected scale.
    CHECK(v.rhs_state > 0.0);
    CHECK(v.rhs_generator > 0.0);
    CHECK(v.lhs_generator > 0.0);
    CHECK(v.lhs_generator < v.rhs_generator);
  }
}

TEST_CASE("the bound is orders of magnitude above the realized deviation at weak noise") {
  // At x ~ 0.01 the linearization error should be cubic-small while the bound
  // is quadratic: the inequality holds with a wide margin, which is what
  // makes it useful as a certificate.
  NoisyCircuit c = noisy_one_qubit(0.0, 0.005);
  BoundVerification v = verify_bounds(c, basis_density(1, 0));
  CHECK(v.state_holds);
  CHECK(v.lhs_state < 0.2 * v.rhs_state);
}

TEST_CASE("supplying precomputed realizations reproduces the self-contained check") {
  NoisyCircuit c = noisy_one_qubit(0.015, 0.02);
  DensityVec rho0 = basis_density(1, 0);
  BoundVerification a = verify_bounds(c, rho0);
  BoundVerification b = verify_bounds_with(c, rho0, realize(c, EvolutionMode::Ideal),
                                           realize(c, EvolutionMode::NoiseOnly),
                                           realize(echo_cycle(c), EvolutionMode::Full));
  CHECK(a.lhs_state == b.lhs_state);
  CHECK(a.rhs_state == b.rhs_state);
  CHECK(a.lhs_generator == b.lhs_generator);
  CHECK(a.rhs_generator == b.rhs_generator);
  CHECK(a.state_holds == b.state_holds);
  CHECK(a.generator_holds == b.generator_holds);
}

TEST_CASE("the verification also covers compiled two-qubit gates") {
  ErrorParams p;
  p.theta = 0.02;
  p.eta = 0.015;
  p.xi = 0.004;
  NoisyCircuit c = cnot_circuit(0, 1, 2, p);
  BoundVerification v = verify_bounds(c, basis_density(2, 0));
  CHECK(v.state_holds);
  CHECK(v.generator_holds);
  CHECK(v.rhs_state > 0.0);
  CHECK(v.rhs_generator > 0.0);
}
