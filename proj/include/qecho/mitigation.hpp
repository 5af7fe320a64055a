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

#ifndef QECHO_MITIGATION_HPP
#define QECHO_MITIGATION_HPP

/// Readout-error mitigation for uncorrelated (per-qubit) classical detector
/// noise.  The detector is modelled as a tensor product of 2x2 stochastic
/// matrices, one per qubit; mitigation multiplies a measured probability
/// vector by the inverse of that tensor product without ever materializing
/// the full 2^n x 2^n matrix.

#include <array>
#include <vector>

#include "qecho/cmatrix.hpp"
#include "qecho/rng.hpp"
#include "qecho/spam.hpp"

namespace qecho {

/// Per-qubit confusion matrices.  blocks[q] stores the 2x2 matrix for qubit q
/// row-major: {m00, m01, m10, m11} where m[i][j] = P(read i | prepared j).
/// Qubit q owns bit (n-1-q) of an outcome index, i.e. qubit 0 is the most
/// significant bit, matching the operator embedding convention.
struct DetectorMatrix {
  std::vector<std::array<double, 4>> blocks;

  int num_qubits() const { return static_cast<int>(blocks.size()); }
};

/// Exact confusion matrix implied by a single-qubit measurement effect
/// Pi = pi0 I + pi1 X + pi2 Y + pi3 Z applied independently to each qubit:
/// P(read 0 | prepared b) = Tr[Pi |b><b|], so the columns are
/// {pi0 + pi3, 1 - pi0 - pi3} and {pi0 - pi3, 1 - pi0 + pi3}.
DetectorMatrix calibrate(const PovmSpec& povm, int num_qubits);

/// Confusion matrix estimated from finite sampling: each calibration column is
/// the empirical frequency of outcome 0 over `shots` Bernoulli trials against
/// the exact probability.  shots must be positive.
DetectorMatrix calibrate_empirical(const PovmSpec& povm, int num_qubits,
                                   std::int64_t shots, Rng& rng);

/// Applies the tensor-product detector to an ideal probability vector,
/// producing the distribution a noisy readout would report.  probs.size()
/// must equal 2^num_qubits.
std::vector<double> apply_detector(const std::vector<double>& probs,
                                   const DetectorMatrix& detector);

/// Multiplies by the inverse detector, one 2x2 inverse per qubit axis.
/// Results may leave the simplex (negative entries); no clipping is applied
/// so that mitigation stays linear and exactly invertible.
std::vector<double> mitigate(const std::vector<double>& probs,
                             const DetectorMatrix& detector);

/// Dense 2^n x 2^n detector matrix (Kronecker product of the blocks), used to
/// cross-check the axis-wise contraction against an explicit linear solve.
CMat full_matrix(const DetectorMatrix& detector);

}  // namespace qecho

#endif  // QECHO_MITIGATION_HPP
