// Copyright 2026 The stablecurve Authors
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

#ifndef STABLECURVE_ERRORS_HPP
#define STABLECURVE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stablecurve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The graph violates a structural requirement (e.g. it is disconnected).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The input lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input. `position()` is a byte offset for syntax
/// errors and an array index for semantic errors inside "vertices"/"edges".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace stablecurve

#endif  // STABLECURVE_ERRORS_HPP
