// Copyright 2026 The PPRL-CBF Authors
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

#ifndef PPRL_COMMON_ERROR_H_
#define PPRL_COMMON_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pprl {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Filters or vectors of different lengths / parameters were combined.
class IncompatibleEncoding : public Error {
 public:
  using Error::Error;
};

// An unmasked value fell outside [0, contributors], or a ciphertext was out of
// range. Signals a wrong mask, a withheld salt, or a corrupted message.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ChannelClosed : public Error {
 public:
  using Error::Error;
};

// The scheduler found unfinished actors that all wait on absent messages.
class Deadlock : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pprl

#endif  // PPRL_COMMON_ERROR_H_
