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

#include <ostream>
#include <string>
#include <vector>

namespace dialectid::cli {

/// Environment variable naming the default output directory of `run`.
inline constexpr const char* kOutputDirEnv = "DIALECTID_OUTPUT_DIR";

/// Entry point of the `dialectid` tool. `args` excludes the program name.
/// Returns the process exit code: 0 ok, 1 validation/alignment/parse,
/// 2 I/O, 3 internal.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dialectid::cli
