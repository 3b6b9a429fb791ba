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

#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace hcran::simd {

namespace {

constexpr KernelTable kScalar{
    Isa::scalar,          detail::dot_scalar,       detail::sqnorm_scalar,
    detail::axpy_scalar,  detail::caxpy_scalar,     detail::quad_form_scalar,
    detail::her_rank1_scalar,
};

#if defined(HCRAN_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::avx2,          detail::dot_avx2,       detail::sqnorm_avx2,
    detail::axpy_avx2,  detail::caxpy_avx2,     detail::quad_form_avx2,
    detail::her_rank1_avx2,
};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() {
  if (const char* env = std::getenv("HCRAN_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return kScalar;
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(HCRAN_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace hcran::simd
