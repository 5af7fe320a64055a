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

#include "qecho/matrix_exp.hpp"

#include <cmath>
#include <stdexcept>

#include "qecho/kernels.hpp"

namespace qecho {

namespace {

// Degree-13 diagonal Pade coefficients and the scaling threshold on the
// 1-norm below which the approximant reaches double-precision accuracy.
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

CMat scaled_sum(const CMat& a, cdouble sa, const CMat& b, cdouble sb) {
  CMat c(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = sa * a.data[i] + sb * b.data[i];
  return c;
}

}  // namespace

CMat matrix_exp(const CMat& a_in) {
  if (a_in.rows != a_in.cols) throw std::invalid_argument("matrix_exp: square matrix required");
  for (const cdouble& v : a_in.data)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("matrix_exp: non-finite entry");

  const int n = a_in.rows;
  const double nrm = norm_1(a_in);
  int s = 0;
  if (nrm > kTheta13) s = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));

  CMat a = a_in;
  if (s > 0) {
    const double scale = std::ldexp(1.0, -s);
    for (cdouble& v : a.data) v *= scale;
  }

  using kernels::matmul;
  const CMat a2 = matmul(a, a);
  const CMat a4 = matmul(a2, a2);
  const CMat a6 = matmul(a2, a4);

  // U = A [A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I]
  CMat w1 = scaled_sum(a6, kPade13[13], a4, kPade13[11]);
  for (size_t i = 0; i < w1.data.size(); ++i) w1.data[i] += kPade13[9] * a2.data[i];
  CMat w = matmul(a6, w1);
  for (size_t i = 0; i < w.data.size(); ++i)
    w.data[i] += kPade13[7] * a6.data[i] + kPade13[5] * a4.data[i] + kPade13[3] * a2.data[i];
  for (int i = 0; i < n; ++i) w(i, i) += kPade13[1];
  const CMat u = matmul(a, w);

  // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
  CMat z1 = scaled_sum(a6, kPade13[12], a4, kPade13[10]);
  for (size_t i = 0; i < z1.data.size(); ++i) z1.data[i] += kPade13[8] * a2.data[i];
  CMat v = matmul(a6, z1);
  for (size_t i = 0; i < v.data.size(); ++i)
    v.data[i] += kPade13[6] * a6.data[i] + kPade13[4] * a4.data[i] + kPade13[2] * a2.data[i];
  for (int i = 0; i < n; ++i) v(i, i) += kPade13[0];

  // R = (V - U)^{-1} (V + U), then undo the scaling by repeated squaring.
  CMat num = v + u;
  CMat den = v - u;
  kernels::LuFactor f = kernels::lu_factor(std::move(den));
  kernels::lu_solve_inplace(f, num);
  CMat r = std::move(num);
  for (int i = 0; i < s; ++i) r = matmul(r, r);
  return r;
}

}  // namespace qecho
