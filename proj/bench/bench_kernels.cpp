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

// Benchmark of the OpenMP kernels against the serial reference
// implementations: complex matmul, matvec and LU factorization.
//
//   qecho_bench [max_size]   (default 1024; sizes 256, 512, ... up to max)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "qecho/cmatrix.hpp"
#include "qecho/kernels.hpp"
#include "qecho/rng.hpp"

namespace {

using qecho::CMat;
using qecho::Rng;

CMat random_matrix(int n, Rng& rng) {
  CMat m(n, n);
  for (auto& v : m.data) v = qecho::cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return m;
}

template <typename F>
double time_best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s < best) best = s;
  }
  return best;
}

void report(const char* name, int n, double flop, double serial_s, double parallel_s) {
  std::printf("%-10s n=%-5d serial %8.3f ms (%6.2f GF/s)   openmp %8.3f ms (%6.2f GF/s)   speedup %.2fx\n",
              name, n, serial_s * 1e3, flop / serial_s * 1e-9, parallel_s * 1e3,
              flop / parallel_s * 1e-9, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  const int max_size = argc > 1 ? std::atoi(argv[1]) : 1024;
  std::printf("threads: %d\n", omp_get_max_threads());
  Rng rng(20260822);

  for (int n = 256; n <= max_size; n *= 2) {
    const CMat a = random_matrix(n, rng);
    const CMat b = random_matrix(n, rng);
    qecho::CVec x(static_cast<size_t>(n));
    for (auto& v : x) v = qecho::cdouble(rng.uniform(-1, 1), rng.uniform(-1, 1));

    CMat sink;
    // One complex multiply-add = 8 real flops.
    const double mm_flop = 8.0 * n * double(n) * n;
    const double serial_mm =
        time_best_of(n >= 1024 ? 1 : 2, [&] { sink = qecho::kernels::serial::matmul(a, b); });
    const double par_mm =
        time_best_of(n >= 1024 ? 2 : 3, [&] { sink = qecho::kernels::matmul(a, b); });
    if (qecho::max_abs_diff(sink, qecho::kernels::serial::matmul(a, b)) > 1e-9)
      std::printf("WARNING: matmul mismatch at n=%d\n", n);
    report("matmul", n, mm_flop, serial_mm, par_mm);

    qecho::CVec ysink;
    const double mv_flop = 8.0 * n * double(n);
    const double serial_mv =
        time_best_of(5, [&] { ysink = qecho::kernels::serial::matvec(a, x); });
    const double par_mv = time_best_of(5, [&] { ysink = qecho::kernels::matvec(a, x); });
    report("matvec", n, mv_flop, serial_mv, par_mv);

    const double lu_flop = 8.0 / 3.0 * n * double(n) * n;
    qecho::kernels::LuFactor lu;
    const double serial_lu =
        time_best_of(1, [&] { lu = qecho::kernels::serial::lu_factor(a); });
    const double par_lu = time_best_of(1, [&] { lu = qecho::kernels::lu_factor(a); });
    report("lu", n, lu_flop, serial_lu, par_lu);
  }
  return 0;
}
