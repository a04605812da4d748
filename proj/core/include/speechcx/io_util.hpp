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

#ifndef SPEECHCX_IO_UTIL_HPP_
#define SPEECHCX_IO_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace speechcx {

// Whole-file helpers; both throw IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Creates dir (and parents) if needed; throws IoError.
void ensure_directory(const std::filesystem::path& dir);

// RFC 4180 quoting: fields containing ',', '"' or newlines are quoted.
std::string csv_field(std::string_view field);

// Splits one CSV record; understands quoted fields. Throws ValidationError
// on an unterminated quote.
std::vector<std::string> parse_csv_line(std::string_view line);

}  // namespace speechcx

#endif  // SPEECHCX_IO_UTIL_HPP_
