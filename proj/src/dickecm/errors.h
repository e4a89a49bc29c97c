// Copyright 2026 The dickecm Authors
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

#ifndef DICKECM_ERRORS_H
#define DICKECM_ERRORS_H

#include <stdexcept>

namespace dickecm {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A bitmask or state does not carry the excitation number the basis requires.
struct ExcitationError : DomainError {
    using DomainError::DomainError;
};

/// Problem size exceeds a memory guard (full-space vectors, dense oracles, density matrices).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation is not expressible in the density-matrix representation it was given.
struct RepresentationError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Invalid user configuration (config files, flags, table files).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A simulation produced a non-finite number.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dickecm

#endif
