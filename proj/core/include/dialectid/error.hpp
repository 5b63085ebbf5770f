/*
 * Copyright 2026 The dialectid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace dialectid {

/// Base of every error raised by the library. Each subclass maps to one
/// process exit code in the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: bad rows, bad headers, bad numbers.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but breaks an invariant (duplicate id, bad fractions, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Bytes that are not well-formed UTF-8.
class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Prediction sets whose example ids do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures. Messages always name the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kIo = 2,
  kInternal = 3,
};

/// A failure inside a named pipeline stage. Keeps the exit code of the
/// underlying error.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::exception& cause);

  const std::string& stage() const noexcept { return stage_; }
  ExitCode code() const noexcept { return code_; }

 private:
  std::string stage_;
  ExitCode code_;
};

ExitCode exit_code_for(const std::exception& e) noexcept;

}  // namespace dialectid
