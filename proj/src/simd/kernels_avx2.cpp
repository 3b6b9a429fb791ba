/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The hcran-sim authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace hcran::simd::detail {

namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// even lanes minus odd lanes
inline double halt(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re0 = _mm256_setzero_pd(), acc_im0 = _mm256_setzero_pd();
  __m256d acc_re1 = _mm256_setzero_pd(), acc_im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = load2(a + i), vb0 = load2(b + i);
    const __m256d va1 = load2(a + i + 2), vb1 = load2(b + i + 2);
    acc_re0 = _mm256_fmadd_pd(va0, vb0, acc_re0);
    acc_im0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), acc_im0);
    acc_re1 = _mm256_fmadd_pd(va1, vb1, acc_re1);
    acc_im1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), acc_im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i), vb = load2(b + i);
    acc_re0 = _mm256_fmadd_pd(va, vb, acc_re0);
    acc_im0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im0);
  }
  // acc_re lanes: ar*br, ai*bi -> sum; acc_im lanes: ar*bi, ai*br -> alternate
  double re = hsum(_mm256_add_pd(acc_re0, acc_re1));
  double im = halt(_mm256_add_pd(acc_im0, acc_im1));
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double sqnorm_avx2(const cplx* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = load2(x + i), v1 = load2(x + i + 2);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void axpy_avx2(double s, const cplx* x, cplx* y, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_fmadd_pd(vs, load2(x + i), load2(y + i)));
  for (; i < n; ++i) y[i] += s * x[i];
}

void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d vr = _mm256_set1_pd(alpha.real());
  const __m256d vi = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = load2(x + i);
    // [ar*xr - ai*xi, ar*xi + ai*xr]
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vr, vx),
                                          _mm256_mul_pd(vi, _mm256_permute_pd(vx, 0b0101)));
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + alpha.real() * xr - alpha.imag() * xi,
            y[i].imag() + alpha.real() * xi + alpha.imag() * xr};
  }
}

double quad_form_avx2(const cplx* a, std::size_t lda, const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx col = dot_avx2(x, a + j * lda, n);
    acc += col.real() * x[j].real() - col.imag() * x[j].imag();
  }
  return acc;
}

void her_rank1_avx2(double s, const cplx* x, cplx* a, std::size_t lda, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) caxpy_avx2(s * std::conj(x[j]), x, a + j * lda, n);
}

}  // namespace hcran::simd::detail
