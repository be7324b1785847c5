// Copyright 2026 The qre Authors
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

namespace qre {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unknown, duplicated or colliding subsystem label.
struct LabelError : Error {
    using Error::Error;
};

/// Argument outside the operation's domain (empty keep set, bad grid, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Matrix or vector dimensions do not agree.
struct ShapeError : Error {
    using Error::Error;
};

/// Matrix violates a state invariant (Hermiticity, trace, positivity, norm).
struct InvalidStateError : Error {
    using Error::Error;
};

/// Post-selection onto an outcome whose probability is below threshold.
struct ZeroProbabilityError : Error {
    using Error::Error;
};

/// Mixed state passed where a pure one is required.
struct PurityError : Error {
    using Error::Error;
};

/// Inconsistent protocol or interferometer configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// Tomography data lacks one or more measurement settings.
struct IncompleteDataError : Error {
    using Error::Error;
};

/// Register exceeds the configured maximum size.
struct SizeError : Error {
    using Error::Error;
};

/// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace qre
