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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dialectid::utf8 {

/// Byte offset of the first ill-formed sequence, or nullopt when `text` is
/// valid UTF-8 (overlong forms, surrogates and code points above U+10FFFF
/// are rejected).
std::optional<std::size_t> find_invalid(std::string_view text) noexcept;

inline bool is_valid(std::string_view text) noexcept {
  return !find_invalid(text).has_value();
}

/// Splits valid UTF-8 into one view per code point. The views alias `text`.
std::vector<std::string_view> code_points(std::string_view text);

/// ASCII whitespace: space, \t, \n, \v, \f, \r.
constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' ||
         c == '\r';
}

}  // namespace dialectid::utf8
