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

#include <cstdint>
#include <random>

#include "hcran/linalg.hpp"

namespace hcran {

/// Counter-based seed derivation: stream `index` of `master` (splitmix64 finalizer).
/// Streams for different indices are statistically independent and the mapping is
/// stable across runs, which makes ensembles order-independent.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Two-level split used for (realization, purpose) style streams.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return split_seed(split_seed(master, a), b);
}

using Rng = std::mt19937_64;

/// CN(0, variance): independent real/imag parts, each with variance/2.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(double variance) : normal_(0.0, std::sqrt(variance / 2.0)) {}

  cplx operator()(Rng& rng) {
    const double re = normal_(rng);
    const double im = normal_(rng);
    return {re, im};
  }

  void fill(Rng& rng, cplx* out, int n) {
    for (int i = 0; i < n; ++i) out[i] = (*this)(rng);
  }

 private:
  std::normal_distribution<double> normal_;
};

inline CVec draw_cn_vector(Rng& rng, int n, double variance) {
  CVec v(n);
  ComplexGaussian g(variance);
  g.fill(rng, v.data(), n);
  return v;
}

}  // namespace hcran
