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

#ifndef SPEECHCX_CONFIG_HPP_
#define SPEECHCX_CONFIG_HPP_

#include <filesystem>
#include <string>

#include "speechcx/contour.hpp"
#include "speechcx/measures.hpp"
#include "speechcx/stats.hpp"

namespace speechcx {

// Settings shared by every subcommand. Serialised into output metadata so a
// run can be repeated from its outputs.
struct RunConfig {
  std::filesystem::path resources;    // resource directory with manifest.tsv
  int ws = 5;
  int step = 1;
  std::string aggregate = "mean";     // mean | median
  std::string np_norm = "per-np";     // per-np | per-sentence
  int deflate_level = kDefaultDeflateLevel;
  double r_threshold = 0.9;
  double band_strong = 0.7;
  double band_moderate = 0.6;
  std::filesystem::path hesitations;  // one word per line; empty = built-in list
  bool filter_hesitations = false;
  std::filesystem::path output = ".";
  unsigned threads = 0;               // 0 = hardware concurrency

  // Throws ConfigError for out-of-range numbers, unknown names, or a
  // hesitation/resource path that does not exist.
  void validate() const;

  ContourConfig contour() const;
  ScoringOptions scoring() const;
  SelectionOptions selection() const;
  AgreementBands bands() const;

  // Deterministic JSON object with every field.
  std::string to_json() const;
};

}  // namespace speechcx

#endif  // SPEECHCX_CONFIG_HPP_
