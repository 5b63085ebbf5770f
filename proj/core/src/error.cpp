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

#include "dialectid/error.hpp"

#include <filesystem>
#include <new>

namespace dialectid {

ExitCode exit_code_for(const std::exception& e) noexcept {
  if (const auto* stage = dynamic_cast<const StageError*>(&e)) {
    return stage->code();
  }
  if (dynamic_cast<const IoError*>(&e) ||
      dynamic_cast<const std::filesystem::filesystem_error*>(&e)) {
    return ExitCode::kIo;
  }
  if (dynamic_cast<const Error*>(&e)) {
    return ExitCode::kValidation;
  }
  return ExitCode::kInternal;
}

StageError::StageError(std::string stage, const std::exception& cause)
    : Error("stage '" + stage + "': " + cause.what()),
      stage_(std::move(stage)),
      code_(exit_code_for(cause)) {}

}  // namespace dialectid
