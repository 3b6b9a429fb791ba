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

#include "hcran/simd/kernels.hpp"

namespace hcran::simd::detail {

cplx dot_scalar(const cplx* a, const cplx* b, std::size_t n);
double sqnorm_scalar(const cplx* x, std::size_t n);
void axpy_scalar(double s, const cplx* x, cplx* y, std::size_t n);
void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double quad_form_scalar(const cplx* a, std::size_t lda, const cplx* x, std::size_t n);
void her_rank1_scalar(double s, const cplx* x, cplx* a, std::size_t lda, std::size_t n);

#if defined(HCRAN_HAVE_AVX2)
cplx dot_avx2(const cplx* a, const cplx* b, std::size_t n);
double sqnorm_avx2(const cplx* x, std::size_t n);
void axpy_avx2(double s, const cplx* x, cplx* y, std::size_t n);
void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double quad_form_avx2(const cplx* a, std::size_t lda, const cplx* x, std::size_t n);
void her_rank1_avx2(double s, const cplx* x, cplx* a, std::size_t lda, std::size_t n);
#endif

}  // namespace hcran::simd::detail
