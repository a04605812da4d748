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

#include "speechcx/version.hpp"

#include "speechcx/measures.hpp"
#include "speechcx/registry.hpp"
#include "speechcx/syntactic.hpp"
#include "speechcx_build_info.hpp"

namespace speechcx {

const char* tool_version() { return kSpeechcxVersion; }

std::string version_banner() {
  return std::string("speechcx ") + kSpeechcxVersion + " (registry " + default_registry().version() +
         ", patterns " + default_pattern_set().version() + ", deflate level " +
         std::to_string(kDefaultDeflateLevel) + ")";
}

}  // namespace speechcx
