// Copyright 2026 The speechcx Authors.
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

#ifndef SPEECHCX_ERROR_HPP_
#define SPEECHCX_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speechcx {

// Base of all library errors. The CLI maps IoError to exit code 2 and
// everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a documented format or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Missing or inconsistent configuration (resources, registry, run config).
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A computation is undefined for the given input (e.g. constant vector
// passed to a correlation, empty reference passed to WER).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed bracketed tree text. offset is a byte offset into the input.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : ValidationError(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Malformed tree pattern expression.
class PatternError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace speechcx

#endif  // SPEECHCX_ERROR_HPP_
