// Copyright 2026 The platoon-stab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace platoon {

/// Base of every error raised by the library. The CLI maps each subclass to
/// one process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected: an invalid platoon, a bad configuration, an out-of-range
/// violation plan, a frequency outside an operation's domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A platoon failing one conjunct of the validity predicate. `conjunct()` is
/// the failed inequality, e.g. "0 < h".
class InvalidPlatoonError : public ValidationError {
 public:
  explicit InvalidPlatoonError(std::string conjunct)
      : ValidationError(conjunct + " violated"), conjunct_(std::move(conjunct)) {}

  const std::string& conjunct() const noexcept { return conjunct_; }

 private:
  std::string conjunct_;
};

/// Transfer-function denominator vanishes at the requested frequency.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Time integration produced a non-finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time)
      : Error(what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Amplitude ratio requested against a reference channel that carries no
/// signal.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Malformed spec or trace input. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace platoon
