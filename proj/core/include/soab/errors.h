// Copyright 2026 The SOAB Authors
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

#ifndef SOAB_ERRORS_H_
#define SOAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace soab {

// Base of every error raised by the library. Each subclass corresponds to one
// failure category that callers (notably the CLI) map to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Card out of range for the deck, duplicate cards, mismatched games.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation requested for a phase where it is undefined.
class PhaseError : public Error {
 public:
  using Error::Error;
};

// Illegal betting action.
class RuleError : public Error {
 public:
  using Error::Error;
};

// Two traces that cannot be spliced.
class ComplementarityError : public Error {
 public:
  using Error::Error;
};

// A required upstream artifact (map, strategy, file) is missing.
class DependencyError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its permitted range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input that fails a structural check (e.g. unnormalized strategy).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed or incompatible persisted file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace soab

#endif  // SOAB_ERRORS_H_
