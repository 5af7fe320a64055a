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

#include "qecho/circuits.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qecho/kernels.hpp"

namespace qecho {

namespace {

using json = nlohmann::json;

const std::array<CMat, 4>& pauli_basis_1q() {
  static const std::array<CMat, 4> basis = {pauli_id(), pauli_x(), pauli_y(), pauli_z()};
  return basis;
}

const std::vector<CMat>& pauli_basis_2q() {
  static const std::vector<CMat> basis = [] {
    std::vector<CMat> out;
    out.reserve(16);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        out.push_back(kernels::kron(pauli_basis_1q()[a], pauli_basis_1q()[b]));
    return out;
  }();
  return basis;
}

/// Conjugation action of `u` on the non-identity Paulis of `basis`, one byte
/// per Pauli: (image index << 1) | (sign < 0).  Returns false when some
/// image is not a signed Pauli, i.e. `u` is not Clifford.
bool pauli_action(const CMat& u, const std::vector<CMat>& basis, std::string* out) {
  const int dim = u.rows;
  const CMat udag = adjoint(u);
  out->clear();
  for (size_t i = 1; i < basis.size(); ++i) {
    const CMat m = kernels::matmul(u, kernels::matmul(basis[i], udag));
    int hit = -1;
    double sign = 0.0;
    for (size_t j = 1; j < basis.size(); ++j) {
      cdouble c = 0.0;
      for (int r = 0; r < dim; ++r)
        for (int s = 0; s < dim; ++s) c += basis[j](s, r) * m(r, s);  // Tr[P_j M]
      c /= static_cast<double>(dim);
      if (std::abs(c) > 0.5) {
        if (std::abs(std::abs(c.real()) - 1.0) > 1e-6 || std::abs(c.imag()) > 1e-6)
          return false;
        hit = static_cast<int>(j);
        sign = c.real();
        break;
      }
    }
    if (hit < 0) return false;
    out->push_back(static_cast<char>((hit << 1) | (sign < 0.0 ? 1 : 0)));
  }
  return true;
}

std::string clifford_key_2q(const CMat& u) {
  std::string key;
  if (!pauli_action(u, pauli_basis_2q(), &key))
    throw std::invalid_argument("clifford table: unitary is not a two-qubit Clifford");
  return key;
}

// ---- single-qubit Clifford enumeration (internal to the table build) ----

struct SqElement {
  std::vector<GateKind> seq;  // quarter turns, applied in order
  CMat u;                     // 2 x 2 product
};

CMat quarter_matrix(GateKind k) {
  switch (k) {
    case GateKind::RxPlus: return rotation_gate(Axis::X, M_PI / 2.0);
    case GateKind::RxMinus: return rotation_gate(Axis::X, -M_PI / 2.0);
    case GateKind::RyPlus: return rotation_gate(Axis::Y, M_PI / 2.0);
    case GateKind::RyMinus: return rotation_gate(Axis::Y, -M_PI / 2.0);
    default: throw std::logic_error("quarter_matrix: not a rotation");
  }
}

/// Breadth-first closure of {R_X(+-pi/2), R_Y(+-pi/2)}: the 24 single-qubit
/// Cliffords with shortest generating sequences.
std::vector<SqElement> enumerate_single_qubit_cliffords() {
  const std::vector<CMat>& basis = [] {
    static const std::vector<CMat> b = {pauli_id(), pauli_x(), pauli_y(), pauli_z()};
    return b;
  }();
  const GateKind gens[] = {GateKind::RxPlus, GateKind::RxMinus, GateKind::RyPlus,
                           GateKind::RyMinus};
  std::vector<SqElement> found;
  std::unordered_map<std::string, int> seen;
  std::deque<SqElement> frontier;
  frontier.push_back({{}, CMat::identity(2)});
  while (!frontier.empty()) {
    SqElement cur = std::move(frontier.front());
    frontier.pop_front();
    std::string key;
    if (!pauli_action(cur.u, basis, &key))
      throw std::logic_error("single-qubit enumeration: non-Clifford product");
    if (seen.count(key)) continue;
    seen[key] = static_cast<int>(found.size());
    found.push_back(cur);
    for (GateKind g : gens) {
      SqElement next;
      next.seq = cur.seq;
      next.seq.push_back(g);
      next.u = kernels::matmul(quarter_matrix(g), cur.u);
      frontier.push_back(std::move(next));
    }
  }
  if (found.size() != 24)
    throw std::logic_error("single-qubit enumeration: expected 24 elements");
  return found;
}

/// Locate the element whose action sends X to `img_x` and Z to `img_z`
/// (both with + sign); indices follow the {I, X, Y, Z} basis.
int find_by_action(const std::vector<SqElement>& sq, int img_x, int img_z) {
  const std::vector<CMat> basis = {pauli_id(), pauli_x(), pauli_y(), pauli_z()};
  for (size_t i = 0; i < sq.size(); ++i) {
    std::string key;
    pauli_action(sq[i].u, basis, &key);
    // key[0] encodes the image of X, key[2] the image of Z.
    if (key[0] == static_cast<char>(img_x << 1) && key[2] == static_cast<char>(img_z << 1))
      return static_cast<int>(i);
  }
  throw std::logic_error("single-qubit enumeration: required element missing");
}

/// Ideal matrix for one GateSpec on `num_qubits` qubits.
CMat ideal_gate_matrix(const GateSpec& g, int num_qubits);

CMat cr_cnot_ideal_2q() {
  // exp(i pi X_t / 4) * exp(-i pi Z_c X_t / 4) * exp(i pi Z_c / 4):
  // a CNOT up to the accumulated global phase.
  const CMat rx = kernels::kron(pauli_id(), rotation_gate(Axis::X, -M_PI / 2.0));
  const CMat rz = kernels::kron(rotation_gate(Axis::Z, -M_PI / 2.0), pauli_id());
  const CMat zx = kernels::kron(pauli_z(), pauli_x());
  CMat mid(4, 4);
  {
    // exp(-i (pi/4) ZX) computed from (ZX)^2 = I: cos(pi/4) I - i sin(pi/4) ZX.
    const double c = std::cos(M_PI / 4.0), s = std::sin(M_PI / 4.0);
    mid = CMat::identity(4);
    for (size_t i = 0; i < mid.data.size(); ++i)
      mid.data[i] = c * mid.data[i] - cdouble(0.0, s) * zx.data[i];
  }
  return kernels::matmul(rx, kernels::matmul(mid, rz));
}

CMat ideal_gate_matrix(const GateSpec& g, int num_qubits) {
  switch (g.kind) {
    case GateKind::RxPlus:
    case GateKind::RxMinus:
    case GateKind::RyPlus:
    case GateKind::RyMinus:
      return embed(quarter_matrix(g.kind), {g.q0}, num_qubits);
    case GateKind::Cnot: {
      CMat u = embed(cr_cnot_ideal_2q(), {g.q0, g.q1}, num_qubits);
      return g.inverted ? adjoint(u) : u;
    }
  }
  throw std::logic_error("ideal_gate_matrix: unknown gate kind");
}

std::vector<GateSpec> on_qubit(const std::vector<GateKind>& seq, int q) {
  std::vector<GateSpec> out;
  out.reserve(seq.size());
  for (GateKind k : seq) out.push_back({k, static_cast<int8_t>(q), -1, false});
  return out;
}

void append(std::vector<GateSpec>& dst, const std::vector<GateSpec>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

/// Shortest native-gate realization of `target` (up to phase) by
/// breadth-first search over quarter turns on either qubit and both CNOT
/// orientations.
std::vector<GateSpec> find_block(const CMat& target) {
  std::string target_key = clifford_key_2q(target);
  std::vector<std::pair<GateSpec, CMat>> gens;
  for (GateKind k : {GateKind::RxPlus, GateKind::RxMinus, GateKind::RyPlus, GateKind::RyMinus})
    for (int q = 0; q < 2; ++q) {
      GateSpec s{k, static_cast<int8_t>(q), -1, false};
      gens.emplace_back(s, ideal_gate_matrix(s, 2));
    }
  for (auto [c, t] : {std::pair{0, 1}, std::pair{1, 0}}) {
    GateSpec s{GateKind::Cnot, static_cast<int8_t>(c), static_cast<int8_t>(t), false};
    gens.emplace_back(s, ideal_gate_matrix(s, 2));
  }

  struct Node {
    std::vector<GateSpec> seq;
    CMat u;
  };
  std::unordered_map<std::string, bool> seen;
  std::deque<Node> frontier;
  frontier.push_back({{}, CMat::identity(4)});
  while (!frontier.empty()) {
    Node cur = std::move(frontier.front());
    frontier.pop_front();
    const std::string key = clifford_key_2q(cur.u);
    if (seen.count(key)) continue;
    seen[key] = true;
    if (key == target_key) return cur.seq;
    for (const auto& [spec, mat] : gens) {
      Node next;
      next.seq = cur.seq;
      next.seq.push_back(spec);
      next.u = kernels::matmul(mat, cur.u);
      frontier.push_back(std::move(next));
    }
  }
  throw std::logic_error("clifford table: block search exhausted the group");
}

int sequence_gate_count(const std::vector<GateSpec>& gates) {
  return static_cast<int>(gates.size());
}

}  // namespace

Superop register_dissipator(int num_qubits, const ErrorParams& p) {
  const int sdim = (1 << num_qubits) * (1 << num_qubits);
  Superop out(sdim, sdim);
  if (p.xi == 0.0) return out;
  if (p.dephasing_weight != 0.0) {
    const Superop d = dephasing_dissipator(num_qubits);
    const double w = p.xi * p.dephasing_weight;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += w * d.data[i];
  }
  if (p.damping_weight != 0.0) {
    const Superop a = damping_dissipator(num_qubits);
    const double w = p.xi * p.damping_weight;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += w * a.data[i];
  }
  return out;
}

InstantGate erroneous_rotation(Axis axis, bool positive, double theta, int qubit,
                               int num_qubits) {
  if (axis == Axis::Z)
    throw std::invalid_argument("erroneous_rotation: use rz_instant for Z rotations");
  const CMat fwd = rotation_gate(axis, positive ? M_PI / 2.0 : -M_PI / 2.0);
  const CMat bwd = rotation_gate(axis, positive ? -M_PI / 2.0 : M_PI / 2.0);
  const CMat err = rotation_gate(Axis::Z, 2.0 * theta);  // exp(-i theta Z)
  InstantGate g;
  g.forward_ideal = embed(fwd, {qubit}, num_qubits);
  if (positive) {
    // R_W(+pi/2) -> exp(-i theta Z) R_W(+pi/2); its inverse gate is played as
    // R_W(-pi/2) exp(+i theta Z).
    g.forward_real = embed(kernels::matmul(err, fwd), {qubit}, num_qubits);
    g.inverse_real = embed(kernels::matmul(bwd, adjoint(err)), {qubit}, num_qubits);
  } else {
    g.forward_real = embed(kernels::matmul(fwd, adjoint(err)), {qubit}, num_qubits);
    g.inverse_real = embed(kernels::matmul(err, bwd), {qubit}, num_qubits);
  }
  return g;
}

InstantGate rz_instant(double angle, int qubit, int num_qubits) {
  InstantGate g;
  g.forward_ideal = embed(rotation_gate(Axis::Z, angle), {qubit}, num_qubits);
  g.forward_real = g.forward_ideal;
  g.inverse_real = adjoint(g.forward_ideal);
  return g;
}

InstantGate hadamard_instant(int qubit, int num_qubits) {
  InstantGate g;
  g.forward_ideal = embed(hadamard_gate(), {qubit}, num_qubits);
  g.forward_real = g.forward_ideal;
  g.inverse_real = g.forward_ideal;  // self-inverse
  return g;
}

std::vector<CircuitElement> cross_resonance_cnot(int control, int target, int num_qubits,
                                                 const ErrorParams& p) {
  if (control == target) throw std::invalid_argument("cross_resonance_cnot: equal qubits");
  std::vector<CircuitElement> out;
  out.push_back(rz_instant(-M_PI / 2.0, control, num_qubits));

  ContinuousSegment seg;
  seg.hamiltonian = embed(kernels::kron(pauli_z(), pauli_x()), {control, target}, num_qubits);
  const int dim = 1 << num_qubits;
  if (p.eta != 0.0) {
    seg.coherent_error =
        embed(kernels::kron(pauli_z(), pauli_z()), {control, target}, num_qubits);
    for (cdouble& v : seg.coherent_error.data) v *= p.eta;
  } else {
    seg.coherent_error = CMat(dim, dim);
  }
  seg.dissipator = register_dissipator(num_qubits, p);
  seg.duration = kCrDuration;
  out.emplace_back(std::move(seg));

  out.push_back(erroneous_rotation(Axis::X, false, p.theta, target, num_qubits));
  return out;
}

NoisyCircuit cnot_circuit(int control, int target, int num_qubits, const ErrorParams& p) {
  NoisyCircuit c;
  c.num_qubits = num_qubits;
  c.elements = cross_resonance_cnot(control, target, num_qubits, p);
  return c;
}

NoisyCircuit ghz_circuit(const ErrorParams& p) {
  NoisyCircuit c;
  c.num_qubits = 5;
  c.elements.push_back(hadamard_instant(0, 5));
  for (int q = 0; q + 1 < 5; ++q) {
    auto block = cross_resonance_cnot(q, q + 1, 5, p);
    for (auto& el : block) c.elements.emplace_back(std::move(el));
  }
  return c;
}

HilbertOp ideal_unitary(const std::vector<GateSpec>& gates, int num_qubits) {
  CMat u = CMat::identity(1 << num_qubits);
  for (const GateSpec& g : gates) u = kernels::matmul(ideal_gate_matrix(g, num_qubits), u);
  return u;
}

NoisyCircuit compile_sequence(const std::vector<GateSpec>& gates, int num_qubits,
                              const ErrorParams& p) {
  NoisyCircuit c;
  c.num_qubits = num_qubits;
  for (const GateSpec& g : gates) {
    switch (g.kind) {
      case GateKind::RxPlus:
        c.elements.push_back(erroneous_rotation(Axis::X, true, p.theta, g.q0, num_qubits));
        break;
      case GateKind::RxMinus:
        c.elements.push_back(erroneous_rotation(Axis::X, false, p.theta, g.q0, num_qubits));
        break;
      case GateKind::RyPlus:
        c.elements.push_back(erroneous_rotation(Axis::Y, true, p.theta, g.q0, num_qubits));
        break;
      case GateKind::RyMinus:
        c.elements.push_back(erroneous_rotation(Axis::Y, false, p.theta, g.q0, num_qubits));
        break;
      case GateKind::Cnot: {
        NoisyCircuit block;
        block.num_qubits = num_qubits;
        block.elements = cross_resonance_cnot(g.q0, g.q1, num_qubits, p);
        if (g.inverted) block = pulse_inverse(block);
        for (auto& el : block.elements) c.elements.emplace_back(std::move(el));
        break;
      }
    }
  }
  return c;
}

CliffordTable CliffordTable::build(int max_sequence_length) {
  CliffordTable table;
  const std::vector<SqElement> sq = enumerate_single_qubit_cliffords();

  // The three-element axis-cycling set {1, C, C^2}, C: X -> Y -> Z -> X.
  const int cyc1 = find_by_action(sq, /*img_x=*/2, /*img_z=*/1);
  const int cyc2 = find_by_action(sq, /*img_x=*/3, /*img_z=*/2);
  const std::array<int, 3> s1 = {0, cyc1, cyc2};
  if (!sq[0].seq.empty())
    throw std::logic_error("clifford table: identity should head the enumeration");

  // Entangling-class representatives, compiled to the native gate set.
  CMat swap_u(4, 4);
  swap_u(0, 0) = 1.0;
  swap_u(1, 2) = 1.0;
  swap_u(2, 1) = 1.0;
  swap_u(3, 3) = 1.0;
  CMat iswap_u(4, 4);
  iswap_u(0, 0) = 1.0;
  iswap_u(1, 2) = cdouble(0.0, 1.0);
  iswap_u(2, 1) = cdouble(0.0, 1.0);
  iswap_u(3, 3) = 1.0;
  const std::vector<GateSpec> swap_block = find_block(swap_u);
  const std::vector<GateSpec> iswap_block = find_block(iswap_u);
  const GateSpec cnot01{GateKind::Cnot, 0, 1, false};

  table.elements_.reserve(kGroupSize);
  auto add_element = [&](std::vector<GateSpec> gates) {
    CliffordElement e;
    e.net_ideal = ideal_unitary(gates, 2);
    e.gates = std::move(gates);
    if (sequence_gate_count(e.gates) > max_sequence_length)
      throw std::logic_error("clifford table: compiled sequence exceeds length bound");
    const std::string key = clifford_key_2q(e.net_ideal);
    const auto [it, inserted] =
        table.index_.emplace(key, static_cast<int>(table.elements_.size()));
    if (!inserted)
      throw std::logic_error("clifford table: class decomposition produced a collision");
    table.elements_.push_back(std::move(e));
  };

  // Single-qubit class, then CNOT, iSWAP and SWAP classes; contiguous layout
  // by class makes a uniform index draw the class-size-weighted draw.
  for (int a = 0; a < 24; ++a)
    for (int b = 0; b < 24; ++b) {
      std::vector<GateSpec> gates;
      append(gates, on_qubit(sq[a].seq, 0));
      append(gates, on_qubit(sq[b].seq, 1));
      add_element(std::move(gates));
    }
  for (const std::vector<GateSpec>* block :
       {static_cast<const std::vector<GateSpec>*>(nullptr), &iswap_block}) {
    for (int a = 0; a < 24; ++a)
      for (int b = 0; b < 24; ++b)
        for (int ia = 0; ia < 3; ++ia)
          for (int ib = 0; ib < 3; ++ib) {
            std::vector<GateSpec> gates;
            append(gates, on_qubit(sq[a].seq, 0));
            append(gates, on_qubit(sq[b].seq, 1));
            if (block == nullptr)
              gates.push_back(cnot01);
            else
              append(gates, *block);
            append(gates, on_qubit(sq[s1[ia]].seq, 0));
            append(gates, on_qubit(sq[s1[ib]].seq, 1));
            add_element(std::move(gates));
          }
  }
  for (int a = 0; a < 24; ++a)
    for (int b = 0; b < 24; ++b) {
      std::vector<GateSpec> gates;
      append(gates, on_qubit(sq[a].seq, 0));
      append(gates, on_qubit(sq[b].seq, 1));
      append(gates, swap_block);
      add_element(std::move(gates));
    }

  if (table.size() != kGroupSize)
    throw std::logic_error("clifford table: enumeration did not produce 11520 elements");
  return table;
}

void CliffordTable::save(const std::string& path) const {
  json root;
  root["format_version"] = 1;
  json elems = json::array();
  for (const CliffordElement& e : elements_) {
    json gates = json::array();
    for (const GateSpec& g : e.gates)
      gates.push_back({static_cast<int>(g.kind), g.q0, g.q1, g.inverted});
    elems.push_back(std::move(gates));
  }
  root["elements"] = std::move(elems);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("clifford table: cannot write cache file " + path);
  out << root.dump();
}

CliffordTable CliffordTable::load_or_build(const std::string& cache_path,
                                           int max_sequence_length) {
  if (!cache_path.empty()) {
    std::ifstream in(cache_path);
    if (in) {
      try {
        json root = json::parse(in);
        if (root.at("format_version").get<int>() != 1)
          throw std::runtime_error("unsupported cache format version");
        CliffordTable table;
        table.elements_.reserve(kGroupSize);
        for (const json& gates : root.at("elements")) {
          CliffordElement e;
          for (const json& g : gates) {
            GateSpec s;
            s.kind = static_cast<GateKind>(g.at(0).get<int>());
            s.q0 = static_cast<int8_t>(g.at(1).get<int>());
            s.q1 = static_cast<int8_t>(g.at(2).get<int>());
            s.inverted = g.at(3).get<bool>();
            e.gates.push_back(s);
          }
          if (sequence_gate_count(e.gates) > max_sequence_length)
            throw std::runtime_error("cached sequence exceeds length bound");
          e.net_ideal = ideal_unitary(e.gates, 2);
          const std::string key = clifford_key_2q(e.net_ideal);
          const auto [it, inserted] =
              table.index_.emplace(key, static_cast<int>(table.elements_.size()));
          if (!inserted) throw std::runtime_error("cached table has duplicate elements");
          table.elements_.push_back(std::move(e));
        }
        if (table.size() != kGroupSize)
          throw std::runtime_error("cached table has wrong element count");
        return table;
      } catch (const std::exception&) {
        // Fall through to a fresh build; the cache is stale or corrupt.
      }
    }
  }
  CliffordTable table = build(max_sequence_length);
  if (!cache_path.empty()) table.save(cache_path);
  return table;
}

int CliffordTable::sample_index(Rng& rng) const {
  return static_cast<int>(rng.uniform_int(static_cast<uint64_t>(size())));
}

int CliffordTable::find_index(const HilbertOp& u) const {
  const std::string key = clifford_key_2q(u);
  const auto it = index_.find(key);
  if (it == index_.end())
    throw std::runtime_error("clifford table: element missing from index");
  return it->second;
}

int CliffordTable::inverse_index(int i) const { return find_index(adjoint(element(i).net_ideal)); }

CliffordElement CliffordTable::inverse_sequence(const CliffordElement& e) {
  CliffordElement inv;
  inv.gates.reserve(e.gates.size());
  for (auto it = e.gates.rbegin(); it != e.gates.rend(); ++it) {
    GateSpec g = *it;
    switch (g.kind) {
      case GateKind::RxPlus: g.kind = GateKind::RxMinus; break;
      case GateKind::RxMinus: g.kind = GateKind::RxPlus; break;
      case GateKind::RyPlus: g.kind = GateKind::RyMinus; break;
      case GateKind::RyMinus: g.kind = GateKind::RyPlus; break;
      case GateKind::Cnot: g.inverted = !g.inverted; break;
    }
    inv.gates.push_back(g);
  }
  inv.net_ideal = adjoint(e.net_ideal);
  return inv;
}

double phase_distance(const CMat& a, const CMat& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("phase_distance: shape mismatch");
  cdouble t = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) t += std::conj(b.data[i]) * a.data[i];
  const cdouble phase = (std::abs(t) > 0.0) ? t / std::abs(t) : cdouble(1.0);
  double worst = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, std::abs(a.data[i] - phase * b.data[i]));
  return worst;
}

}  // namespace qecho
