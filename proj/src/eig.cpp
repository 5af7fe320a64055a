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

#include "qecho/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qecho/kernels.hpp"

namespace qecho {

namespace {

double hypot2(double a, double b) { return std::hypot(a, b); }

/// Unitary Householder reduction of a Hermitian matrix to real tridiagonal
/// form.  On return `d` holds the diagonal, `e` the n-1 subdiagonal entries,
/// and (when requested) `q` the accumulated transform with
/// A = Q T Q^dagger.
void tridiagonalize(CMat a, std::vector<double>& d, std::vector<double>& e, CMat* q) {
  const int n = a.rows;
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (q) *q = CMat::identity(n);
  std::vector<cdouble> sub(n > 0 ? n - 1 : 0);  // complex subdiagonal before phasing

  std::vector<cdouble> v, p, w, qv;
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    // Householder vector from the column below the diagonal.
    double xnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    cdouble x0 = a(k + 1, k);
    if (xnorm == 0.0) {
      sub[k] = 0.0;
      continue;
    }
    const cdouble phase = (x0 == cdouble(0.0)) ? cdouble(1.0) : x0 / std::abs(x0);
    const cdouble alpha = -phase * xnorm;

    v.assign(m, cdouble(0.0));
    double vnorm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      v[i] = a(k + 1 + i, k);
      if (i == 0) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    sub[k] = alpha;
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // Hermitian rank-2 update of the trailing block:
    //   B <- B - v w^dagger - w v^dagger,  w = p - (beta/2)(v^dagger p) v,
    //   p = beta B v.
    p.assign(m, cdouble(0.0));
    for (int i = 0; i < m; ++i) {
      const cdouble* row = &a.data[static_cast<size_t>(k + 1 + i) * n + (k + 1)];
      cdouble s = 0.0;
      for (int j = 0; j < m; ++j) s += row[j] * v[j];
      p[i] = beta * s;
    }
    cdouble vp = 0.0;
    for (int i = 0; i < m; ++i) vp += std::conj(v[i]) * p[i];
    w = p;
    const cdouble corr = 0.5 * beta * vp;
    for (int i = 0; i < m; ++i) w[i] -= corr * v[i];
    for (int i = 0; i < m; ++i) {
      cdouble* row = &a.data[static_cast<size_t>(k + 1 + i) * n + (k + 1)];
      const cdouble vi = v[i], wi = w[i];
      for (int j = 0; j < m; ++j)
        row[j] -= vi * std::conj(w[j]) + wi * std::conj(v[j]);
    }

    if (q) {
      // Q <- Q (I - beta v v^dagger) on columns k+1..n-1.
      qv.assign(n, cdouble(0.0));
      for (int r = 0; r < n; ++r) {
        const cdouble* row = &q->data[static_cast<size_t>(r) * n + (k + 1)];
        cdouble s = 0.0;
        for (int j = 0; j < m; ++j) s += row[j] * v[j];
        qv[r] = s;
      }
      for (int r = 0; r < n; ++r) {
        cdouble* row = &q->data[static_cast<size_t>(r) * n + (k + 1)];
        const cdouble s = beta * qv[r];
        for (int j = 0; j < m; ++j) row[j] -= s * std::conj(v[j]);
      }
    }
  }
  if (n >= 2) sub[n - 2] = a(n - 1, n - 2);
  for (int i = 0; i < n; ++i) d[i] = a(i, i).real();

  // Rotate the complex subdiagonal onto the real axis with a diagonal phase
  // matrix, folded into Q.
  cdouble t = 1.0;
  std::vector<cdouble> phase_col(n, cdouble(1.0));
  for (int k = 0; k + 1 < n; ++k) {
    const double mag = std::abs(sub[k]);
    e[k] = mag;
    if (mag > 0.0) t *= sub[k] / mag;
    phase_col[k + 1] = t;
  }
  if (q) {
    for (int r = 0; r < n; ++r)
      for (int c = 1; c < n; ++c) (*q)(r, c) *= phase_col[c];
  }
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix; rotations are
/// optionally accumulated into the complex columns of `q`.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, CMat* q) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter == 50) throw std::runtime_error("hermitian_eig: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (q) {
            for (int row = 0; row < q->rows; ++row) {
              const cdouble z1 = (*q)(row, i + 1);
              const cdouble z0 = (*q)(row, i);
              (*q)(row, i + 1) = s * z0 + c * z1;
              (*q)(row, i) = c * z0 - s * z1;
            }
          }
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

}  // namespace

HermitianEig hermitian_eig(const CMat& a, bool want_vectors) {
  if (a.rows != a.cols) throw std::invalid_argument("hermitian_eig: square matrix required");
  const double scale = norm_max(a);
  if (hermiticity_defect(a) > 1e-8 * (1.0 + scale))
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

  HermitianEig out;
  std::vector<double> e;
  CMat q;
  tridiagonalize(a, out.values, e, want_vectors ? &q : nullptr);
  tridiagonal_ql(out.values, e, want_vectors ? &q : nullptr);

  // Sort ascending, permuting eigenvector columns alongside.
  const int n = a.rows;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return out.values[i] < out.values[j]; });
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = out.values[order[i]];
  out.values = std::move(sorted);
  if (want_vectors) {
    out.vectors = CMat(n, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) out.vectors(r, c) = q(r, order[c]);
  }
  return out;
}

double spectral_norm(const CMat& a) {
  if (a.rows == 0 || a.cols == 0) return 0.0;
  // Gram matrix route: every singular value of A is the square root of an
  // eigenvalue of A^dagger A, and the Gram matrix is Hermitian by
  // construction.
  const CMat gram = kernels::matmul(adjoint(a), a);
  HermitianEig eig = hermitian_eig(gram, /*want_vectors=*/false);
  const double top = eig.values.empty() ? 0.0 : eig.values.back();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace qecho
