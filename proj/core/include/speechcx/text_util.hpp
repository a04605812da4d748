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

#ifndef SPEECHCX_TEXT_UTIL_HPP_
#define SPEECHCX_TEXT_UTIL_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace speechcx {

// ASCII lower-casing; bytes >= 0x80 pass through unchanged.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on a single delimiter character; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char delim);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string_view> split_whitespace(std::string_view s);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Parses a finite double occupying the whole string; false otherwise.
bool parse_double(std::string_view s, double& out);

// Parses a base-10 integer occupying the whole string.
bool parse_int(std::string_view s, long long& out);

// "%.6g" rendering used by every CSV writer.
std::string format_score(double value);

}  // namespace speechcx

#endif  // SPEECHCX_TEXT_UTIL_HPP_
