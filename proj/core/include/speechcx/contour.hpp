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

#ifndef SPEECHCX_CONTOUR_HPP_
#define SPEECHCX_CONTOUR_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "speechcx/measures.hpp"

namespace speechcx {

enum class Aggregate { kMean, kMedian };

std::string_view aggregate_name(Aggregate a);
Aggregate parse_aggregate(std::string_view name);

struct ContourConfig {
  int ws = 5;    // window size in sentences
  int step = 1;  // stride in sentences
  Aggregate aggregate = Aggregate::kMean;

  // Throws ConfigError unless ws >= 1 and step >= 1.
  void validate() const;
};

// Per-window series of one measure over one document.
struct Contour {
  std::string measure;
  std::string doc_id;
  std::vector<Score> series;
  Score aggregate;  // over non-missing entries; missing if none

  bool operator==(const Contour&) const = default;
};

// max(1, floor((S - ws) / step) + 1) for S >= ws, else 1.
std::size_t window_count(std::size_t sentences, const ContourConfig& cfg);

// Windows [i, i + ws) for i = 0, step, ... while i + ws <= S; a document
// shorter than ws yields a single whole-document window.
std::vector<Window> windows(const Document& doc, const ContourConfig& cfg);

Score aggregate(std::span<const Score> series, Aggregate how);

// One contour per registered measure, in registry order.
std::vector<Contour> score_document(const Document& doc, const ContourConfig& cfg,
                                    const MeasureRegistry& registry,
                                    const ResourceBundle& resources,
                                    const ScoringOptions& options = {});

struct CorpusScores {
  ScoreTable table;                          // one row per document
  std::vector<std::vector<Contour>> contours;  // [document][measure]
  std::vector<std::vector<Score>> coverage;    // [document][measure], prevalence only
};

// Scores documents on `threads` workers (0 = hardware concurrency). The
// result is in corpus order regardless of scheduling.
CorpusScores score_corpus(std::span<const Document> docs, const ContourConfig& cfg,
                          const MeasureRegistry& registry, const ResourceBundle& resources,
                          const ScoringOptions& options = {}, unsigned threads = 0);

// Long format "doc_id,measure,window_index,score".
std::string contours_csv(const std::vector<std::vector<Contour>>& contours);
void write_contours(const std::vector<std::vector<Contour>>& contours,
                    const std::filesystem::path& path);

}  // namespace speechcx

#endif  // SPEECHCX_CONTOUR_HPP_
