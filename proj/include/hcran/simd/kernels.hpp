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

#pragma once

// Complex double kernels for the inner loops of the rate, MSE and QCQP code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2+FMA
// variant. The variant is chosen once at first use from CPUID; setting the
// environment variable HCRAN_SIMD=scalar forces the reference path. Variants agree
// to within floating-point reassociation (see tests/test_kernels.cpp).
//
// Matrices are dense column-major with leading dimension `lda`.

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace hcran::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  /// sum_i conj(a_i) * b_i
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
  /// sum_i |x_i|^2
  double (*sqnorm)(const cplx* x, std::size_t n);
  /// y += s * x, real s
  void (*axpy)(double s, const cplx* x, cplx* y, std::size_t n);
  /// y += alpha * x, complex alpha
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// Re(x^H A x) for n x n A
  double (*quad_form)(const cplx* a, std::size_t lda, const cplx* x, std::size_t n);
  /// A += s * x x^H, real s
  void (*her_rank1)(double s, const cplx* x, cplx* a, std::size_t lda, std::size_t n);
};

const KernelTable& scalar_kernels();
/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_kernels();
/// The table in use for this process.
const KernelTable& active_kernels();

std::string_view isa_name(Isa isa);

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline double sqnorm(std::span<const cplx> x) {
  return active_kernels().sqnorm(x.data(), x.size());
}

inline void axpy(double s, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  active_kernels().axpy(s, x.data(), y.data(), x.size());
}

inline void caxpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  active_kernels().caxpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace hcran::simd
