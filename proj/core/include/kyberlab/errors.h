/*
 * Copyright 2026 The kyberlab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KYBERLAB_ERRORS_H_
#define KYBERLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace kyberlab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched lengths or dimensions between operands.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A value lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller-supplied input is missing or too short.
class InputError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not defined for this parameter set.
class UnsupportedVariantError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized data. `field()` names the offending element.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error("parse error at '" + field + "': " + what),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class AuthenticationError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kyberlab

#endif  // KYBERLAB_ERRORS_H_
