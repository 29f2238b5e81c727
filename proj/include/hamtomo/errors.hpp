// Copyright 2026 The hamtomo Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HAMTOMO_ERRORS_HPP
#define HAMTOMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hamtomo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or lengths do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated (chain too short, q out
/// of range, zero vector, non-Hermitian input, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Selected eigenstates are degenerate beyond tolerance; the caller may
/// resample the Hamiltonian.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

/// Decomposition failure or a nullspace vector that cannot be normalized.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Results do not cover the grid a table or figure needs.
class IncompleteGrid : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hamtomo

#endif  // HAMTOMO_ERRORS_HPP
