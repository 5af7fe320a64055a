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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qecho {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major storage.
///
/// This is the one container used throughout: Hilbert-space operators
/// (dimension N x N), superoperators (N^2 x N^2) and anything in between.
/// It is deliberately plain — all heavy arithmetic lives in kernels.hpp.
struct CMat {
  int rows = 0;
  int cols = 0;
  std::vector<cdouble> data;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

  cdouble& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const cdouble& operator()(int i, int j) const {
    return data[static_cast<size_t>(i) * cols + j];
  }

  static CMat zeros(int r, int c) { return CMat(r, c); }

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  bool same_shape(const CMat& o) const { return rows == o.rows && cols == o.cols; }
};

/// Dense complex vector (Liouville-space density vectors, quadrature scratch...).
using CVec = std::vector<cdouble>;

// ---- small elementwise helpers (cheap O(n^2) work; hot paths are in kernels) ----

inline CMat operator+(const CMat& a, const CMat& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("CMat+: shape mismatch");
  CMat c(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] + b.data[i];
  return c;
}

inline CMat operator-(const CMat& a, const CMat& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("CMat-: shape mismatch");
  CMat c(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] - b.data[i];
  return c;
}

inline CMat operator*(cdouble s, const CMat& a) {
  CMat c(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = s * a.data[i];
  return c;
}

inline CMat& operator+=(CMat& a, const CMat& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("CMat+=: shape mismatch");
  for (size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
  return a;
}

/// Conjugate transpose.
inline CMat adjoint(const CMat& a) {
  CMat c(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

inline CMat transpose(const CMat& a) {
  CMat c(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) c(j, i) = a(i, j);
  return c;
}

inline CMat conjugate(const CMat& a) {
  CMat c(a.rows, a.cols);
  for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = std::conj(a.data[i]);
  return c;
}

/// Maximum column sum of absolute values (the induced 1-norm).
inline double norm_1(const CMat& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows; ++i) s += std::abs(a(i, j));
    if (s > best) best = s;
  }
  return best;
}

inline double norm_frobenius(const CMat& a) {
  double s = 0.0;
  for (const cdouble& v : a.data) s += std::norm(v);
  return std::sqrt(s);
}

/// Largest absolute entry; the workhorse for "equal within tol" checks.
inline double norm_max(const CMat& a) {
  double best = 0.0;
  for (const cdouble& v : a.data) {
    double m = std::abs(v);
    if (m > best) best = m;
  }
  return best;
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double best = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    double m = std::abs(a.data[i] - b.data[i]);
    if (m > best) best = m;
  }
  return best;
}

/// Deviation from the identity in max norm.
inline double deviation_from_identity(const CMat& a) {
  double best = 0.0;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      double m = std::abs(a(i, j) - (i == j ? 1.0 : 0.0));
      if (m > best) best = m;
    }
  return best;
}

/// Deviation from the Hermitian property, ||A - A^dagger||_max.
inline double hermiticity_defect(const CMat& a) {
  double best = 0.0;
  for (int i = 0; i < a.rows; ++i)
    for (int j = i; j < a.cols; ++j) {
      double m = std::abs(a(i, j) - std::conj(a(j, i)));
      if (m > best) best = m;
    }
  return best;
}

// ---- vector helpers ----

inline cdouble dot_conj(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot_conj: size mismatch");
  cdouble s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double vec_norm(const CVec& a) {
  double s = 0.0;
  for (const cdouble& v : a) s += std::norm(v);
  return std::sqrt(s);
}

inline double vec_max_abs_diff(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_max_abs_diff: size mismatch");
  double best = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double m = std::abs(a[i] - b[i]);
    if (m > best) best = m;
  }
  return best;
}

}  // namespace qecho
