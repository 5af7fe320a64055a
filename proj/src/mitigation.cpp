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

#include "qecho/mitigation.hpp"

#include <cmath>
#include <stdexcept>

#include "qecho/kernels.hpp"

namespace qecho {

namespace {

// Applies one 2x2 block along the axis owned by `qubit`, out-of-place into
// `scratch`, then swaps.  The contraction order over qubits is fixed, and the
// two-term update per pair is order-independent, so results are deterministic.
void contract_axis(std::vector<double>& probs, std::vector<double>& scratch,
                   const std::array<double, 4>& m, int num_qubits, int qubit) {
  const size_t dim = probs.size();
  const size_t stride = size_t{1} << (num_qubits - 1 - qubit);
  for (size_t base = 0; base < dim; base += 2 * stride) {
    for (size_t off = 0; off < stride; ++off) {
      const double p0 = probs[base + off];
      const double p1 = probs[base + off + stride];
      scratch[base + off] = m[0] * p0 + m[1] * p1;
      scratch[base + off + stride] = m[2] * p0 + m[3] * p1;
    }
  }
  probs.swap(scratch);
}

void check_shape(const std::vector<double>& probs, const DetectorMatrix& detector) {
  const size_t dim = size_t{1} << detector.num_qubits();
  if (probs.size() != dim)
    throw std::invalid_argument("detector: probability vector has wrong length");
}

}  // namespace

DetectorMatrix calibrate(const PovmSpec& povm, int num_qubits) {
  validate(povm);
  if (num_qubits < 1) throw std::invalid_argument("calibrate: need at least one qubit");
  const double p00 = povm.pi0 + povm.pi3;  // P(read 0 | prepared 0)
  const double p01 = povm.pi0 - povm.pi3;  // P(read 0 | prepared 1)
  DetectorMatrix d;
  d.blocks.assign(static_cast<size_t>(num_qubits), {p00, p01, 1.0 - p00, 1.0 - p01});
  return d;
}

DetectorMatrix calibrate_empirical(const PovmSpec& povm, int num_qubits,
                                   std::int64_t shots, Rng& rng) {
  validate(povm);
  if (num_qubits < 1) throw std::invalid_argument("calibrate: need at least one qubit");
  if (shots <= 0) throw std::invalid_argument("calibrate: shots must be positive");
  const double p00 = povm.pi0 + povm.pi3;
  const double p01 = povm.pi0 - povm.pi3;
  DetectorMatrix d;
  d.blocks.reserve(static_cast<size_t>(num_qubits));
  for (int q = 0; q < num_qubits; ++q) {
    const double f00 =
        static_cast<double>(rng.binomial(shots, p00)) / static_cast<double>(shots);
    const double f01 =
        static_cast<double>(rng.binomial(shots, p01)) / static_cast<double>(shots);
    d.blocks.push_back({f00, f01, 1.0 - f00, 1.0 - f01});
  }
  return d;
}

std::vector<double> apply_detector(const std::vector<double>& probs,
                                   const DetectorMatrix& detector) {
  check_shape(probs, detector);
  std::vector<double> out = probs;
  std::vector<double> scratch(out.size());
  for (int q = 0; q < detector.num_qubits(); ++q)
    contract_axis(out, scratch, detector.blocks[q], detector.num_qubits(), q);
  return out;
}

std::vector<double> mitigate(const std::vector<double>& probs,
                             const DetectorMatrix& detector) {
  check_shape(probs, detector);
  std::vector<double> out = probs;
  std::vector<double> scratch(out.size());
  for (int q = 0; q < detector.num_qubits(); ++q) {
    const auto& m = detector.blocks[q];
    const double det = m[0] * m[3] - m[1] * m[2];
    if (std::abs(det) < 1e-12)
      throw std::runtime_error("mitigate: detector block is singular");
    const std::array<double, 4> inv = {m[3] / det, -m[1] / det, -m[2] / det,
                                       m[0] / det};
    contract_axis(out, scratch, inv, detector.num_qubits(), q);
  }
  return out;
}

CMat full_matrix(const DetectorMatrix& detector) {
  CMat full = CMat::identity(1);
  for (const auto& m : detector.blocks) {
    CMat block(2, 2);
    block(0, 0) = m[0];
    block(0, 1) = m[1];
    block(1, 0) = m[2];
    block(1, 1) = m[3];
    full = kernels::kron(full, block);
  }
  return full;
}

}  // namespace qecho
