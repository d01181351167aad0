// Copyright 2026 The seqent Authors
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
#include <string>

namespace seqent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix shapes do not fit the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input expected to be Hermitian is not (within tolerance).
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Pearson coefficient requested where one side has (numerically) zero
/// variance.
class SingularVarianceError : public Error {
 public:
  using Error::Error;
};

/// Conditional probability requested on an outcome with zero marginal.
class UndefinedConditionalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent scenario / run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace seqent
