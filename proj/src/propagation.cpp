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

#include "qecho/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "qecho/eig.hpp"
#include "qecho/kernels.hpp"
#include "qecho/matrix_exp.hpp"

namespace qecho {

namespace {

bool is_zero(const CMat& m) { return norm_max(m) == 0.0; }

int hilbert_dim(const NoisyCircuit& c) { return 1 << c.num_qubits; }

void check_segment(const ContinuousSegment& s, int dim) {
  if (s.hamiltonian.rows != dim || s.hamiltonian.cols != dim)
    throw std::invalid_argument("circuit: segment Hamiltonian dimension mismatch");
  if (s.coherent_error.rows != dim || s.coherent_error.cols != dim)
    throw std::invalid_argument("circuit: segment coherent-error dimension mismatch");
  if (s.dissipator.rows != dim * dim || s.dissipator.cols != dim * dim)
    throw std::invalid_argument("circuit: segment dissipator dimension mismatch");
  if (!(s.duration > 0.0))
    throw std::invalid_argument("circuit: segment duration must be positive");
  if (hermiticity_defect(s.hamiltonian) > 1e-10 * (1.0 + norm_max(s.hamiltonian)))
    throw std::invalid_argument("circuit: segment Hamiltonian is not Hermitian");
  if (hermiticity_defect(s.coherent_error) > 1e-10 * (1.0 + norm_max(s.coherent_error)))
    throw std::invalid_argument("circuit: segment coherent error is not Hermitian");
  // The dissipator must annihilate the trace functional: <<I| L = 0.
  const DensityVec tr = trace_functional(dim);
  CVec row(s.dissipator.cols, cdouble(0.0));
  for (int i = 0; i < s.dissipator.rows; ++i) {
    const cdouble ti = std::conj(tr[i]);
    if (ti == cdouble(0.0)) continue;
    for (int j = 0; j < s.dissipator.cols; ++j) row[j] += ti * s.dissipator(i, j);
  }
  double worst = 0.0;
  for (const cdouble& v : row) worst = std::max(worst, std::abs(v));
  if (worst > 1e-9 * (1.0 + norm_max(s.dissipator)))
    throw std::invalid_argument("circuit: dissipator does not annihilate the trace");
}

void check_gate(const InstantGate& g, int dim) {
  for (const HilbertOp* u : {&g.forward_ideal, &g.forward_real, &g.inverse_real}) {
    if (u->rows != dim || u->cols != dim)
      throw std::invalid_argument("circuit: instant-gate dimension mismatch");
    const CMat probe = kernels::matmul(adjoint(*u), *u);
    if (deviation_from_identity(probe) > 1e-9)
      throw std::invalid_argument("circuit: instant gate is not unitary");
  }
}

/// Segment generator for a mode, scaled by the duration.
CMat segment_generator(const ContinuousSegment& s, EvolutionMode mode) {
  const cdouble mi(0.0, -1.0);
  Superop g = mi * liouville_hamiltonian(s.hamiltonian);
  if (mode == EvolutionMode::Full && !is_zero(s.coherent_error))
    g += mi * liouville_hamiltonian(s.coherent_error);
  if (mode != EvolutionMode::Ideal)
    g += cdouble(1.0) * s.dissipator;
  for (cdouble& v : g.data) v *= s.duration;
  return g;
}

const HilbertOp& gate_unitary(const InstantGate& g, EvolutionMode mode) {
  return mode == EvolutionMode::Full ? g.forward_real : g.forward_ideal;
}

/// Frame integral shared by first_magnus_term and coherent_error_term: for
/// each segment accumulate
///     integral_0^T U_L^dagger(t) G_seg U_L(t) dt
/// where U_L(t) is the cumulative ideal propagator and G_seg is produced by
/// `segment_term`.  Segments whose term is absent are skipped (but still
/// advance the frame).
template <typename SegmentTerm>
Superop frame_integral(const NoisyCircuit& c, int quad_order, SegmentTerm segment_term) {
  validate(c);
  if (quad_order < 1) throw std::invalid_argument("frame_integral: quadrature order >= 1");
  const int dim = hilbert_dim(c);
  const int sdim = dim * dim;
  const Quadrature quad = gauss_legendre(quad_order);

  Superop acc(sdim, sdim);
  HilbertOp frame = CMat::identity(dim);  // cumulative ideal unitary, Hilbert level

  for (const CircuitElement& el : c.elements) {
    if (std::holds_alternative<InstantGate>(el)) {
      frame = kernels::matmul(std::get<InstantGate>(el).forward_ideal, frame);
      continue;
    }
    const ContinuousSegment& seg = std::get<ContinuousSegment>(el);
    const Superop* term = segment_term(seg);
    HermitianEig eig = hermitian_eig(seg.hamiltonian, /*want_vectors=*/true);

    if (term != nullptr) {
      // Work in the drive eigenbasis, where the frame rotation at time t is
      // the diagonal phase e^{-i lam_a t} with lam_a = d_a1 - d_a2.
      const CMat v_l = kernels::kron(eig.vectors, conjugate(eig.vectors));
      CMat g_tilde = kernels::matmul(adjoint(v_l), kernels::matmul(*term, v_l));

      // Gauss-Legendre sum of e^{+i lam_a t} G~_ab e^{-i lam_b t}, entrywise.
      std::vector<double> lam(sdim);
      for (int a1 = 0; a1 < dim; ++a1)
        for (int a2 = 0; a2 < dim; ++a2)
          lam[a1 * dim + a2] = eig.values[a1] - eig.values[a2];
      std::vector<cdouble> factor(sdim);
      CMat s_mat(sdim, sdim);
      for (int i = 0; i < quad_order; ++i) {
        const double t = 0.5 * seg.duration * (quad.nodes[i] + 1.0);
        const double w = 0.5 * seg.duration * quad.weights[i];
        for (int a = 0; a < sdim; ++a)
          factor[a] = std::polar(1.0, lam[a] * t);
#pragma omp parallel for schedule(static)
        for (int a = 0; a < sdim; ++a) {
          const cdouble fa = w * factor[a];
          cdouble* srow = &s_mat.data[static_cast<size_t>(a) * sdim];
          const cdouble* grow = &g_tilde.data[static_cast<size_t>(a) * sdim];
          for (int b = 0; b < sdim; ++b)
            srow[b] += fa * grow[b] * std::conj(factor[b]);
        }
      }

      // Back to the original basis and through the accumulated frame:
      // contribution = B^dagger S B with B = V_L^dagger F_L, which factorizes
      // as a Kronecker product at the Hilbert level.
      const HilbertOp b_h = kernels::matmul(adjoint(eig.vectors), frame);
      const CMat b_l = kernels::kron(b_h, conjugate(b_h));
      acc += kernels::matmul(adjoint(b_l), kernels::matmul(s_mat, b_l));
    }

    // Advance the frame by the segment's ideal evolution, exactly.
    CMat phases(dim, dim);
    for (int i = 0; i < dim; ++i)
      phases(i, i) = std::polar(1.0, -eig.values[i] * seg.duration);
    const HilbertOp step =
        kernels::matmul(eig.vectors, kernels::matmul(phases, adjoint(eig.vectors)));
    frame = kernels::matmul(step, frame);
  }
  return acc;
}

}  // namespace

double NoisyCircuit::total_duration() const {
  double t = 0.0;
  for (const CircuitElement& el : elements)
    if (std::holds_alternative<ContinuousSegment>(el))
      t += std::get<ContinuousSegment>(el).duration;
  return t;
}

void validate(const NoisyCircuit& c) {
  if (c.num_qubits < 1 || c.num_qubits > 16)
    throw std::invalid_argument("circuit: qubit count out of range");
  const int dim = hilbert_dim(c);
  for (const CircuitElement& el : c.elements) {
    if (std::holds_alternative<ContinuousSegment>(el))
      check_segment(std::get<ContinuousSegment>(el), dim);
    else
      check_gate(std::get<InstantGate>(el), dim);
  }
}

Superop realize(const NoisyCircuit& c, EvolutionMode mode) {
  validate(c);
  const int sdim = hilbert_dim(c) * hilbert_dim(c);
  Superop out = CMat::identity(sdim);
  bool first = true;
  for (const CircuitElement& el : c.elements) {
    Superop step;
    if (std::holds_alternative<ContinuousSegment>(el))
      step = matrix_exp(segment_generator(std::get<ContinuousSegment>(el), mode));
    else
      step = unitary_superoperator(gate_unitary(std::get<InstantGate>(el), mode));
    if (first) {
      out = std::move(step);
      first = false;
    } else {
      out = kernels::matmul(step, out);
    }
  }
  return out;
}

HilbertOp ideal_hilbert_unitary(const NoisyCircuit& c) {
  validate(c);
  const int dim = hilbert_dim(c);
  HilbertOp out = CMat::identity(dim);
  for (const CircuitElement& el : c.elements) {
    HilbertOp step;
    if (std::holds_alternative<ContinuousSegment>(el)) {
      const auto& seg = std::get<ContinuousSegment>(el);
      step = matrix_exp(cdouble(0.0, -seg.duration) * seg.hamiltonian);
    } else {
      step = std::get<InstantGate>(el).forward_ideal;
    }
    out = kernels::matmul(step, out);
  }
  return out;
}

NoisyCircuit pulse_inverse(const NoisyCircuit& c, CoherentErrorPolicy policy) {
  NoisyCircuit inv;
  inv.num_qubits = c.num_qubits;
  inv.elements.reserve(c.elements.size());
  for (auto it = c.elements.rbegin(); it != c.elements.rend(); ++it) {
    if (std::holds_alternative<ContinuousSegment>(*it)) {
      ContinuousSegment s = std::get<ContinuousSegment>(*it);
      for (cdouble& v : s.hamiltonian.data) v = -v;
      if (policy == CoherentErrorPolicy::Negated)
        for (cdouble& v : s.coherent_error.data) v = -v;
      inv.elements.emplace_back(std::move(s));
    } else {
      const InstantGate& g = std::get<InstantGate>(*it);
      InstantGate r;
      r.forward_ideal = adjoint(g.forward_ideal);
      r.forward_real = g.inverse_real;
      r.inverse_real = g.forward_real;
      inv.elements.emplace_back(std::move(r));
    }
  }
  return inv;
}

NoisyCircuit echo_cycle(const NoisyCircuit& c, CoherentErrorPolicy policy) {
  NoisyCircuit cyc = c;
  NoisyCircuit inv = pulse_inverse(c, policy);
  cyc.elements.insert(cyc.elements.end(), inv.elements.begin(), inv.elements.end());
  return cyc;
}

Superop first_magnus_term(const NoisyCircuit& c, int quad_order) {
  return frame_integral(c, quad_order, [](const ContinuousSegment& s) -> const Superop* {
    return is_zero(s.dissipator) ? nullptr : &s.dissipator;
  });
}

Superop coherent_error_term(const NoisyCircuit& c, int quad_order) {
  // Materialize each segment's commutator term on demand, keeping it alive
  // for the duration of the segment's integral.
  Superop scratch;
  return frame_integral(c, quad_order, [&scratch](const ContinuousSegment& s) -> const Superop* {
    if (is_zero(s.coherent_error)) return nullptr;
    scratch = liouville_hamiltonian(s.coherent_error);
    return &scratch;
  });
}

Superop cycle_magnus_generator(const NoisyCircuit& c, int quad_order) {
  Superop chi = first_magnus_term(c, quad_order);
  for (cdouble& v : chi.data) v *= 2.0;
  const Superop theta = coherent_error_term(echo_cycle(c), quad_order);
  const cdouble mi(0.0, -1.0);
  for (size_t i = 0; i < chi.data.size(); ++i) chi.data[i] += mi * theta.data[i];
  return chi;
}

Quadrature gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order >= 1 required");
  Quadrature q;
  q.nodes.resize(order);
  q.weights.resize(order);
  // Newton iteration on the Legendre polynomial P_n from the Chebyshev-based
  // initial guess; symmetric nodes are filled in pairs.
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.weights[i] = w;
    q.weights[order - 1 - i] = w;
  }
  return q;
}

}  // namespace qecho
