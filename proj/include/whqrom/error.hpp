// Copyright 2026 The whqrom Authors
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

namespace whqrom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input value outside its admissible interval.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Length or dimension mismatch (e.g. non power-of-two sample count).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter combination; carries the offending field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Malformed input file; line is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Problem too large for dense verification.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// A numerical check exceeded its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

class DegenerateNormError : public Error {
 public:
  using Error::Error;
};

}  // namespace whqrom
