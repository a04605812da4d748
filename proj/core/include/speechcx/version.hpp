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

#ifndef SPEECHCX_VERSION_HPP_
#define SPEECHCX_VERSION_HPP_

#include <string>

namespace speechcx {

// Tool version; set by the build.
const char* tool_version();

// One line naming the tool, measure registry, pattern set and deflate level.
std::string version_banner();

}  // namespace speechcx

#endif  // SPEECHCX_VERSION_HPP_
