/* Copyright 2026 The VLF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef VLF_ERRORS_HPP_
#define VLF_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vlf {

// Base of every error thrown by the library. Callers that only care about
// "something in vlf failed" catch this; the subclasses name the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes that cannot be combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid model or component configuration (head count, template, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Non-finite values where finite ones are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Broken internal contract: missing gradients, non-partition boundaries.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Caller supplied input that violates an operation's precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

// Unknown criterion or label in a judgment record.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace vlf

#endif  // VLF_ERRORS_HPP_
