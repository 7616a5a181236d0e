// Copyright 2026 The qdos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace qdos {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A dense or exponential-size object was requested beyond its cap.
class SizeError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// Malformed Hamiltonian, config or fixture text.
class FormatError : public Error {
  public:
    using Error::Error;
};

/// A series method was requested on inputs it cannot handle
/// (e.g. half-time evaluation with a complex Hamiltonian).
class IncompatibleMethod : public Error {
  public:
    using Error::Error;
};

/// The partition-function quadrature produced Z <= 0.
class DegenerateDos : public Error {
  public:
    using Error::Error;
};

} // namespace qdos
