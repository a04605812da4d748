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

#include "speechcx/config.hpp"

#include <nlohmann/json.hpp>

#include "speechcx/error.hpp"

namespace speechcx {

void RunConfig::validate() const {
  contour().validate();
  parse_aggregate(aggregate);
  parse_np_norm(np_norm);
  if (deflate_level < 1 || deflate_level > 9) throw ConfigError("deflate_level must be in 1..9");
  if (!(r_threshold > 0 && r_threshold < 1)) throw ConfigError("r_threshold must be in (0, 1)");
  if (!(band_moderate >= -1 && band_strong <= 1 && band_moderate <= band_strong)) {
    throw ConfigError("bands must satisfy -1 <= band_moderate <= band_strong <= 1");
  }
  if (!resources.empty() && !std::filesystem::is_directory(resources)) {
    throw ConfigError("resource directory '" + resources.string() + "' does not exist");
  }
  if (!hesitations.empty() && !std::filesystem::is_regular_file(hesitations)) {
    throw ConfigError("hesitation lexicon '" + hesitations.string() + "' does not exist");
  }
}

ContourConfig RunConfig::contour() const { return {ws, step, parse_aggregate(aggregate)}; }

ScoringOptions RunConfig::scoring() const {
  ScoringOptions o;
  o.deflate_level = deflate_level;
  o.np_norm = parse_np_norm(np_norm);
  return o;
}

SelectionOptions RunConfig::selection() const {
  SelectionOptions o;
  o.r_threshold = r_threshold;
  return o;
}

AgreementBands RunConfig::bands() const { return {band_strong, band_moderate}; }

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["resources"] = resources.generic_string();
  j["ws"] = ws;
  j["step"] = step;
  j["aggregate"] = aggregate;
  j["np_norm"] = np_norm;
  j["deflate_level"] = deflate_level;
  j["r_threshold"] = r_threshold;
  j["band_strong"] = band_strong;
  j["band_moderate"] = band_moderate;
  j["hesitations"] = hesitations.generic_string();
  j["filter_hesitations"] = filter_hesitations;
  return j.dump(2);
}

}  // namespace speechcx
