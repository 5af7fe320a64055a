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

namespace qecho::kernels {

// OpenMP-parallel dense kernels.  The matmul splits operands into separate
// real/imaginary planes so the inner loop vectorizes; rows are distributed
// over threads.  Every row is accumulated by a single thread in a fixed k
// order, so results are bit-identical for any thread count.
//
// The `serial` namespace carries straightforward reference implementations
// (textbook loops over std::complex) used by the test suite and by the
// benchmark target to validate and measure the parallel versions.

/// C = A * B.
void matmul(const CMat& a, const CMat& b, CMat& c);
CMat matmul(const CMat& a, const CMat& b);

/// y = A * x.
void matvec(const CMat& a, const CVec& x, CVec& y);
CVec matvec(const CMat& a, const CVec& x);

/// y = A^T * x (equivalently the row vector x^T A, returned as a column).
CVec matvec_transposed(const CMat& a, const CVec& x);

/// Kronecker product, row-major convention: (A ⊗ B)[i*p+k, j*q+l] = A[i,j] B[k,l].
CMat kron(const CMat& a, const CMat& b);

/// LU factorization with partial pivoting, kept for repeated solves.
struct LuFactor {
  CMat lu;                // unit-lower + upper factors packed in place
  std::vector<int> piv;   // row swaps applied at each elimination step
};

LuFactor lu_factor(CMat a);

/// B <- A^{-1} B given the factorization of A.
void lu_solve_inplace(const LuFactor& f, CMat& b);
CVec lu_solve(const LuFactor& f, CVec b);

namespace serial {
CMat matmul(const CMat& a, const CMat& b);
CVec matvec(const CMat& a, const CVec& x);
CMat kron(const CMat& a, const CMat& b);
LuFactor lu_factor(CMat a);
void lu_solve_inplace(const LuFactor& f, CMat& b);
}  // namespace serial

}  // namespace qecho::kernels
