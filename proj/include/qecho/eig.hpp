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

#include <vector>

#include "qecho/cmatrix.hpp"

namespace qecho {

/// Result of a Hermitian eigendecomposition: A = V diag(values) V^dagger.
/// `values` is sorted ascending; `vectors` holds eigenvectors as columns and
/// is empty when only eigenvalues were requested.
struct HermitianEig {
  std::vector<double> values;
  CMat vectors;
};

/// Full eigendecomposition of a Hermitian matrix by unitary Householder
/// reduction to real tridiagonal form followed by implicit-shift QL.
/// Throws if the input is not Hermitian within a coarse guard tolerance.
HermitianEig hermitian_eig(const CMat& a, bool want_vectors);

/// Largest singular value, computed from the full spectrum of A^dagger A.
/// (All singular values are produced internally; only the top one is needed
/// by callers, so that is what is returned.)
double spectral_norm(const CMat& a);

}  // namespace qecho
