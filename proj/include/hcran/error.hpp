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

#include <stdexcept>
#include <string>

namespace hcran {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (d <= 0, MSE <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (e.g. infeasible pilot assignment).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Search space or problem size beyond the configured guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Matrix expected to be Hermitian positive definite failed factorization.
class MatrixError : public Error {
 public:
  using Error::Error;
};

/// Iterative method hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : Error(what + " (iterations=" + std::to_string(iterations) +
              ", residual=" + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Malformed config or data file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hcran
