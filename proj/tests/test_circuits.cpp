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
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "qecho/circuits.hpp"
#include "qecho/kernels.hpp"
#include "qecho/liouville.hpp"
#include "qecho/propagation.hpp"
#include "qecho/rng.hpp"

using namespace qecho;

namespace {

// One shared table for the whole test binary; building takes about a second.
const CliffordTable& table() {
  static CliffordTable t = CliffordTable::build();
  return t;
}

}  // namespace

TEST_CASE("the two-qubit Clifford table has the full group") {
  CHECK(table().size() == CliffordTable::kGroupSize);
  CHECK(table().size() == 11520);
}

TEST_CASE("sampled products stay in the table and inverses invert") {
  Rng rng(601);
  for (int trial = 0; trial < 40; ++trial) {
    int a = table().sample_index(rng);
    int b = table().sample_index(rng);
    CMat prod = kernels::matmul(table().element(a).net_ideal, table().element(b).net_ideal);
    int c = table().find_index(prod);
    CHECK(phase_distance(table().element(c).net_ideal, prod) < 1e-9);

    int ainv = table().inverse_index(a);
    CMat id = kernels::matmul(table().element(ainv).net_ideal, table().element(a).net_ideal);
    CHECK(phase_distance(id, CMat::identity(4)) < 1e-10);
  }
}

TEST_CASE("find_index rejects a non-Clifford unitary") {
  CMat t(4, 4);
  t(0, 0) = 1; t(1, 1) = 1; t(2, 2) = 1;
  t(3, 3) = std::exp(cdouble(0, M_PI / 4));  // T gate on the second qubit
  CHECK_THROWS(table().find_index(t));
}

TEST_CASE("phase distance ignores a global phase and nothing else") {
  CMat u = table().element(77).net_ideal;
  CMat v = std::exp(cdouble(0, 1.234)) * u;
  CHECK(phase_distance(u, v) < 1e-12);
  CMat w = u;
  w(0, 0) += 0.01;
  CHECK(phase_distance(u, w) > 1e-3);
}

TEST_CASE("gate sequences of table elements compile to their net unitary") {
  Rng rng(602);
  ErrorParams clean;
  for (int trial = 0; trial < 10; ++trial) {
    const CliffordElement& e = table().sample(rng);
    // The cached net unitary matches the product of the gate list.
    CHECK(phase_distance(ideal_unitary(e.gates, 2), e.net_ideal) < 1e-10);
    // Compiling with zero errors and realizing in Full mode gives the same
    // channel (global phase drops out in Liouville space).
    NoisyCircuit c = compile_sequence(e.gates, 2, clean);
    Superop got = realize(c, EvolutionMode::Full);
    CHECK(max_abs_diff(got, unitary_superoperator(e.net_ideal)) < 1e-9);
  }
}

TEST_CASE("inverse sequences compile to the inverse channel") {
  Rng rng(603);
  ErrorParams clean;
  for (int trial = 0; trial < 6; ++trial) {
    const CliffordElement& e = table().sample(rng);
    CliffordElement inv = CliffordTable::inverse_sequence(e);
    CMat prod = kernels::matmul(inv.net_ideal, e.net_ideal);
    CHECK(phase_distance(prod, CMat::identity(4)) < 1e-10);

    // With no errors, the compiled inverse undoes the compiled element.
    Superop fwd = realize(compile_sequence(e.gates, 2, clean), EvolutionMode::Full);
    Superop bwd = realize(compile_sequence(inv.gates, 2, clean), EvolutionMode::Full);
    CHECK(deviation_from_identity(kernels::matmul(bwd, fwd)) < 1e-9);
  }
}

TEST_CASE("compiling the inverse sequence equals the pulse inverse channel") {
  // With errors on, playing the inverted gate list must reproduce the pulse
  // inverse of the compiled forward circuit: same faulty-inverse semantics.
  Rng rng(604);
  ErrorParams p;
  p.theta = 0.08;
  p.eta = 0.05;
  p.xi = 0.01;
  for (int trial = 0; trial < 4; ++trial) {
    const CliffordElement& e = table().sample(rng);
    CliffordElement inv = CliffordTable::inverse_sequence(e);
    NoisyCircuit fwd = compile_sequence(e.gates, 2, p);
    Superop via_list = realize(compile_sequence(inv.gates, 2, p), EvolutionMode::Full);
    Superop via_pulse = realize(pulse_inverse(fwd), EvolutionMode::Full);
    CHECK(max_abs_diff(via_list, via_pulse) < 1e-9);
  }
}

TEST_CASE("uniform index sampling is uniform over the table") {
  Rng rng(605);
  const int draws = 115200;  // 10 per element on average
  std::vector<int> hits(3, 0);
  // Spot-check three fixed indices rather than the full histogram.
  const int probes[3] = {0, 5000, 11519};
  for (int i = 0; i < draws; ++i) {
    int k = table().sample_index(rng);
    REQUIRE(k >= 0);
    REQUIRE(k < 11520);
    for (int j = 0; j < 3; ++j)
      if (k == probes[j]) ++hits[j];
  }
  for (int j = 0; j < 3; ++j) {
    CHECK(hits[j] > 0);   // expectation 10
    CHECK(hits[j] < 40);
  }
}

TEST_CASE("the erroneous rotation multiplies in the advertised phase error") {
  double theta = 0.21;
  InstantGate plus = erroneous_rotation(Axis::X, true, theta, 0, 1);
  CMat want_plus = kernels::matmul(rotation_gate(Axis::Z, 2 * theta),
                                   rotation_gate(Axis::X, M_PI / 2));
  CHECK(max_abs_diff(plus.forward_real, want_plus) < 1e-13);
  CHECK(max_abs_diff(plus.forward_ideal, rotation_gate(Axis::X, M_PI / 2)) < 1e-13);

  InstantGate minus = erroneous_rotation(Axis::X, false, theta, 0, 1);
  CMat want_minus = kernels::matmul(rotation_gate(Axis::X, -M_PI / 2),
                                    rotation_gate(Axis::Z, -2 * theta));
  CHECK(max_abs_diff(minus.forward_real, want_minus) < 1e-13);

  // The recorded inverse of the + gate is the faulty - gate and vice versa.
  CHECK(max_abs_diff(plus.inverse_real, minus.forward_real) < 1e-13);
  CHECK(max_abs_diff(minus.inverse_real, plus.forward_real) < 1e-13);
}

TEST_CASE("gate then recorded inverse calls the phase errors to cancel") {
  double theta = 0.17;
  for (Axis ax : {Axis::X, Axis::Y}) {
    for (bool positive : {true, false}) {
      InstantGate g = erroneous_rotation(ax, positive, theta, 0, 1);
      CMat prod = kernels::matmul(g.inverse_real, g.forward_real);
      CHECK(deviation_from_identity(prod) < 1e-13);
    }
  }
}

TEST_CASE("the cross-resonance block implements a CNOT up to local phases") {
  ErrorParams clean;
  NoisyCircuit c = cnot_circuit(0, 1, 2, clean);
  CMat u = ideal_hilbert_unitary(c);
  // The ideal block equals CNOT up to a global phase after the compensating
  // single-qubit frame corrections that the block itself carries.
  CMat cnot(4, 4);
  cnot(0, 0) = 1; cnot(1, 1) = 1; cnot(2, 3) = 1; cnot(3, 2) = 1;
  CHECK(phase_distance(u, cnot) < 1e-10);
}

TEST_CASE("the cross-resonance coherent error enters as a two-qubit Z phase") {
  ErrorParams p;
  p.eta = 0.3;  // exaggerated for visibility
  NoisyCircuit noisy = cnot_circuit(0, 1, 2, p);
  NoisyCircuit clean = cnot_circuit(0, 1, 2, ErrorParams{});
  // Full-mode realization with eta differs from the clean one by
  // exp(-i eta T Z(x)Z) applied inside the segment; verify via the segment's
  // recorded coherent error term.
  bool found_segment = false;
  for (const auto& el : noisy.elements) {
    if (!std::holds_alternative<ContinuousSegment>(el)) continue;
    const auto& s = std::get<ContinuousSegment>(el);
    found_segment = true;
    CMat zz = kernels::kron(pauli_z(), pauli_z());
    CHECK(max_abs_diff(s.coherent_error, cdouble(p.eta) * zz) < 1e-13);
  }
  CHECK(found_segment);
  // And the ideal realizations agree (the error never touches Ideal mode).
  CHECK(max_abs_diff(realize(noisy, EvolutionMode::Ideal),
                     realize(clean, EvolutionMode::Ideal)) < 1e-12);
}

TEST_CASE("the register dissipator scales with xi and its weights") {
  ErrorParams p;
  p.xi = 0.4;
  p.dephasing_weight = 0.25;
  p.damping_weight = 0.75;
  Superop got = register_dissipator(2, p);
  Superop deph = dephasing_dissipator(2);
  Superop damp = damping_dissipator(2);
  Superop want(16, 16);
  for (size_t i = 0; i < want.data.size(); ++i)
    want.data[i] = 0.4 * (0.25 * deph.data[i] + 0.75 * damp.data[i]);
  CHECK(max_abs_diff(got, want) < 1e-15);

  p.xi = 0.0;
  CHECK(norm_max(register_dissipator(2, p)) == 0.0);
}

TEST_CASE("the GHZ circuit prepares the GHZ state in Ideal mode") {
  ErrorParams clean;
  NoisyCircuit ghz = ghz_circuit(clean);
  CHECK(ghz.num_qubits == 5);
  CMat u = ideal_hilbert_unitary(ghz);
  // |GHZ> = (|00000> + |11111>)/sqrt(2): column 0 of the unitary.
  double s = 1.0 / std::sqrt(2.0);
  for (int r = 0; r < 32; ++r) {
    double want = (r == 0 || r == 31) ? s : 0.0;
    CHECK(std::abs(std::abs(u(r, 0)) - want) < 1e-10);
  }
  // The two amplitudes carry the same phase (true GHZ, not a relative-phase
  // variant).
  CHECK(std::abs(u(0, 0) - u(31, 0)) < 1e-10);
}

TEST_CASE("table save and load round-trips and re-validates") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "qecho_test_clifford_cache.bin";
  std::error_code ec;
  fs::remove(path, ec);

  table().save(path.string());
  CHECK(fs::exists(path));
  CliffordTable loaded = CliffordTable::load_or_build(path.string());
  REQUIRE(loaded.size() == table().size());
  Rng rng(606);
  for (int trial = 0; trial < 8; ++trial) {
    int i = static_cast<int>(rng.uniform_int(11520));
    CHECK(phase_distance(loaded.element(i).net_ideal, table().element(i).net_ideal) < 1e-12);
    CHECK(loaded.element(i).gates.size() == table().element(i).gates.size());
  }
  fs::remove(path, ec);
}

TEST_CASE("load_or_build falls back to building when the cache is absent") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "qecho_test_no_such_cache.bin";
  std::error_code ec;
  fs::remove(path, ec);
  CliffordTable t = CliffordTable::load_or_build(path.string());
  CHECK(t.size() == 11520);
  // The build wrote the cache for next time.
  CHECK(fs::exists(path));
  fs::remove(path, ec);
}
