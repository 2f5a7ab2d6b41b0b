// Copyright 2026 The vqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VQLAB_ERRORS_HPP_
#define VQLAB_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vqlab {

// Base of all library errors. Subclasses map onto the CLI exit codes:
// config errors exit 2, media errors exit 3, encoder errors exit 4.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed container/header data. Carries the byte offset of the defect.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t byte_offset)
      : Error(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// File size inconsistent with the declared geometry.
class SizeError : public Error {
 public:
  SizeError(const std::string& msg, std::size_t expected, std::size_t actual)
      : Error(msg + " (expected " + std::to_string(expected) + ", got " +
              std::to_string(actual) + ")"),
        expected_(expected),
        actual_(actual) {}
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

// Plane/frame geometry mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Model file violates the documented schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// External encoder/decoder bridge failure, with captured diagnostics.
class EncoderError : public Error {
 public:
  EncoderError(const std::string& msg, std::string diagnostics)
      : Error(msg), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const { return diagnostics_; }

 private:
  std::string diagnostics_;
};

class WriteError : public Error {
 public:
  using Error::Error;
};

}  // namespace vqlab

#endif  // VQLAB_ERRORS_HPP_
