// Copyright 2026 The seqprod Authors
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

#include <stdexcept>
#include <string>

namespace seqprod {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An input violates a documented invariant (bad dimension, spectrum out of range, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// The Jacobi eigensolver hit its sweep cap.
class NonConvergence : public Error {
   public:
    using Error::Error;
};

/// Interpolation nodes collide numerically.
class ClusteredSpectrum : public Error {
   public:
    using Error::Error;
};

/// A hypothesis-filtered check saw too few admissible samples.
class InsufficientSamples : public Error {
   public:
    using Error::Error;
};

/// Effects of a decomposition do not sum to the identity.
class DecompositionError : public Error {
   public:
    using Error::Error;
};

}  // namespace seqprod
