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

#include "qecho/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qecho::kernels {

namespace {
// Block size over the contraction index.  One block of B rows (two doubles per
// entry after the split) stays resident in L1/L2 while a C row accumulates.
constexpr int kContractionBlock = 64;
}  // namespace

void matmul(const CMat& a, const CMat& b, CMat& c) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimension mismatch");
  const int m = a.rows, k = a.cols, n = b.cols;
  c = CMat(m, n);

  // Split B into real/imag planes once; the inner loop then runs on plain
  // double arrays and vectorizes cleanly.
  std::vector<double> br(static_cast<size_t>(k) * n), bi(static_cast<size_t>(k) * n);
  for (size_t p = 0; p < b.data.size(); ++p) {
    br[p] = b.data[p].real();
    bi[p] = b.data[p].imag();
  }

#pragma omp parallel
  {
    std::vector<double> cr(n), ci(n);
#pragma omp for schedule(static)
    for (int i = 0; i < m; ++i) {
      std::fill(cr.begin(), cr.end(), 0.0);
      std::fill(ci.begin(), ci.end(), 0.0);
      for (int k0 = 0; k0 < k; k0 += kContractionBlock) {
        const int k1 = std::min(k0 + kContractionBlock, k);
        for (int kk = k0; kk < k1; ++kk) {
          const cdouble av = a(i, kk);
          const double ar = av.real(), ai = av.imag();
          const double* brow = &br[static_cast<size_t>(kk) * n];
          const double* birow = &bi[static_cast<size_t>(kk) * n];
#pragma omp simd
          for (int j = 0; j < n; ++j) {
            cr[j] += ar * brow[j] - ai * birow[j];
            ci[j] += ar * birow[j] + ai * brow[j];
          }
        }
      }
      cdouble* crow = &c.data[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) crow[j] = cdouble(cr[j], ci[j]);
    }
  }
}

CMat matmul(const CMat& a, const CMat& b) {
  CMat c;
  matmul(a, b, c);
  return c;
}

void matvec(const CMat& a, const CVec& x, CVec& y) {
  if (a.cols != static_cast<int>(x.size()))
    throw std::invalid_argument("matvec: dimension mismatch");
  y.assign(a.rows, cdouble(0.0));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) {
    const cdouble* row = &a.data[static_cast<size_t>(i) * a.cols];
    double sr = 0.0, si = 0.0;
    for (int j = 0; j < a.cols; ++j) {
      const double xr = x[j].real(), xi = x[j].imag();
      const double rr = row[j].real(), ri = row[j].imag();
      sr += rr * xr - ri * xi;
      si += rr * xi + ri * xr;
    }
    y[i] = cdouble(sr, si);
  }
}

CVec matvec(const CMat& a, const CVec& x) {
  CVec y;
  matvec(a, x, y);
  return y;
}

CVec matvec_transposed(const CMat& a, const CVec& x) {
  if (a.rows != static_cast<int>(x.size()))
    throw std::invalid_argument("matvec_transposed: dimension mismatch");
  CVec y(a.cols, cdouble(0.0));
  // Accumulate row by row in a fixed order (deterministic, cache friendly).
  for (int i = 0; i < a.rows; ++i) {
    const cdouble xi = x[i];
    if (xi == cdouble(0.0)) continue;
    const cdouble* row = &a.data[static_cast<size_t>(i) * a.cols];
    for (int j = 0; j < a.cols; ++j) y[j] += xi * row[j];
  }
  return y;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat c(a.rows * b.rows, a.cols * b.cols);
  const int bc = b.cols;
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < b.rows; ++k) {
      cdouble* crow = &c.data[(static_cast<size_t>(i) * b.rows + k) * c.cols];
      const cdouble* brow = &b.data[static_cast<size_t>(k) * bc];
      for (int j = 0; j < a.cols; ++j) {
        const cdouble av = a(i, j);
        cdouble* dst = crow + static_cast<size_t>(j) * bc;
        for (int l = 0; l < bc; ++l) dst[l] = av * brow[l];
      }
    }
  }
  return c;
}

LuFactor lu_factor(CMat a) {
  if (a.rows != a.cols) throw std::invalid_argument("lu_factor: matrix must be square");
  const int n = a.rows;
  LuFactor f;
  f.piv.resize(n);
  for (int col = 0; col < n; ++col) {
    // Partial pivot: largest magnitude on/below the diagonal.
    int p = col;
    double best = std::abs(a(col, col));
    for (int i = col + 1; i < n; ++i) {
      double m = std::abs(a(i, col));
      if (m > best) {
        best = m;
        p = i;
      }
    }
    f.piv[col] = p;
    if (best == 0.0) throw std::runtime_error("lu_factor: singular matrix");
    if (p != col)
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(p, j));

    const cdouble inv_piv = 1.0 / a(col, col);
    for (int i = col + 1; i < n; ++i) a(i, col) *= inv_piv;

    // Rank-1 trailing update; rows are independent, each handled by one thread.
    const cdouble* urow = &a.data[static_cast<size_t>(col) * n];
#pragma omp parallel for schedule(static) if (n - col > 128)
    for (int i = col + 1; i < n; ++i) {
      const cdouble l = a(i, col);
      if (l == cdouble(0.0)) continue;
      cdouble* row = &a.data[static_cast<size_t>(i) * n];
      const double lr = l.real(), li = l.imag();
      for (int j = col + 1; j < n; ++j) {
        const double ur = urow[j].real(), ui = urow[j].imag();
        row[j] -= cdouble(lr * ur - li * ui, lr * ui + li * ur);
      }
    }
  }
  f.lu = std::move(a);
  return f;
}

void lu_solve_inplace(const LuFactor& f, CMat& b) {
  const int n = f.lu.rows;
  if (b.rows != n) throw std::invalid_argument("lu_solve: dimension mismatch");
  const int nrhs = b.cols;
  for (int col = 0; col < n; ++col) {
    const int p = f.piv[col];
    if (p != col)
      for (int j = 0; j < nrhs; ++j) std::swap(b(col, j), b(p, j));
  }
  // Forward substitution with the unit-lower factor.  All right-hand sides
  // advance together so the inner loop runs along contiguous rows.
  for (int col = 0; col < n; ++col) {
    const cdouble* brow = &b.data[static_cast<size_t>(col) * nrhs];
#pragma omp parallel for schedule(static) if (n - col > 128)
    for (int i = col + 1; i < n; ++i) {
      const cdouble l = f.lu(i, col);
      if (l == cdouble(0.0)) continue;
      cdouble* row = &b.data[static_cast<size_t>(i) * nrhs];
      for (int j = 0; j < nrhs; ++j) row[j] -= l * brow[j];
    }
  }
  // Back substitution with the upper factor.
  for (int col = n - 1; col >= 0; --col) {
    const cdouble inv_d = 1.0 / f.lu(col, col);
    cdouble* brow = &b.data[static_cast<size_t>(col) * nrhs];
    for (int j = 0; j < nrhs; ++j) brow[j] *= inv_d;
#pragma omp parallel for schedule(static) if (col > 128)
    for (int i = 0; i < col; ++i) {
      const cdouble u = f.lu(i, col);
      if (u == cdouble(0.0)) continue;
      cdouble* row = &b.data[static_cast<size_t>(i) * nrhs];
      for (int j = 0; j < nrhs; ++j) row[j] -= u * brow[j];
    }
  }
}

CVec lu_solve(const LuFactor& f, CVec b) {
  CMat col(static_cast<int>(b.size()), 1);
  col.data = std::move(b);
  lu_solve_inplace(f, col);
  return std::move(col.data);
}

namespace serial {

CMat matmul(const CMat& a, const CMat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("serial::matmul: dimension mismatch");
  CMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const cdouble av = a(i, k);
      for (int j = 0; j < b.cols; ++j) c(i, j) += av * b(k, j);
    }
  return c;
}

CVec matvec(const CMat& a, const CVec& x) {
  if (a.cols != static_cast<int>(x.size()))
    throw std::invalid_argument("serial::matvec: dimension mismatch");
  CVec y(a.rows, cdouble(0.0));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) y[i] += a(i, j) * x[j];
  return y;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat c(a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      for (int k = 0; k < b.rows; ++k)
        for (int l = 0; l < b.cols; ++l)
          c(i * b.rows + k, j * b.cols + l) = a(i, j) * b(k, l);
  return c;
}

LuFactor lu_factor(CMat a) {
  if (a.rows != a.cols) throw std::invalid_argument("serial::lu_factor: square required");
  const int n = a.rows;
  LuFactor f;
  f.piv.resize(n);
  for (int col = 0; col < n; ++col) {
    int p = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(p, col))) p = i;
    f.piv[col] = p;
    if (a(p, col) == cdouble(0.0)) throw std::runtime_error("serial::lu_factor: singular");
    if (p != col)
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(p, j));
    for (int i = col + 1; i < n; ++i) {
      a(i, col) /= a(col, col);
      for (int j = col + 1; j < n; ++j) a(i, j) -= a(i, col) * a(col, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

void lu_solve_inplace(const LuFactor& f, CMat& b) {
  const int n = f.lu.rows;
  for (int col = 0; col < n; ++col) {
    const int p = f.piv[col];
    if (p != col)
      for (int j = 0; j < b.cols; ++j) std::swap(b(col, j), b(p, j));
  }
  for (int col = 0; col < n; ++col)
    for (int i = col + 1; i < n; ++i)
      for (int j = 0; j < b.cols; ++j) b(i, j) -= f.lu(i, col) * b(col, j);
  for (int col = n - 1; col >= 0; --col) {
    for (int j = 0; j < b.cols; ++j) b(col, j) /= f.lu(col, col);
    for (int i = 0; i < col; ++i)
      for (int j = 0; j < b.cols; ++j) b(i, j) -= f.lu(i, col) * b(col, j);
  }
}

}  // namespace serial

}  // namespace qecho::kernels
