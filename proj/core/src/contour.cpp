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

#include "speechcx/contour.hpp"

#include <algorithm>

#include "speechcx/error.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/parallel.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

std::string_view aggregate_name(Aggregate a) { return a == Aggregate::kMean ? "mean" : "median"; }

Aggregate parse_aggregate(std::string_view name) {
  if (name == "mean") return Aggregate::kMean;
  if (name == "median") return Aggregate::kMedian;
  throw ConfigError("unknown aggregate '" + std::string(name) + "' (expected mean or median)");
}

void ContourConfig::validate() const {
  if (ws < 1) throw ConfigError("window size must be >= 1");
  if (step < 1) throw ConfigError("window step must be >= 1");
}

std::size_t window_count(std::size_t sentences, const ContourConfig& cfg) {
  const auto ws = static_cast<std::size_t>(cfg.ws);
  const auto step = static_cast<std::size_t>(cfg.step);
  if (sentences < ws) return 1;
  return (sentences - ws) / step + 1;
}

std::vector<Window> windows(const Document& doc, const ContourConfig& cfg) {
  cfg.validate();
  const std::span<const Sentence> all(doc.sentences);
  const std::size_t s = all.size();
  const auto ws = static_cast<std::size_t>(cfg.ws);
  const auto step = static_cast<std::size_t>(cfg.step);
  std::vector<Window> out;
  if (s < ws) {
    out.emplace_back(all, 0);
    return out;
  }
  for (std::size_t i = 0; i + ws <= s; i += step) out.emplace_back(all.subspan(i, ws), i);
  return out;
}

Score aggregate(std::span<const Score> series, Aggregate how) {
  std::vector<double> v;
  for (const Score& x : series) {
    if (x) v.push_back(*x);
  }
  if (v.empty()) return std::nullopt;
  if (how == Aggregate::kMean) {
    // Sorted summation keeps the mean independent of series order.
    std::sort(v.begin(), v.end());
    double sum = 0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  }
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

namespace {

struct DocumentResult {
  std::vector<Contour> contours;
  std::vector<Score> coverage;
};

DocumentResult score_one(const Document& doc, const ContourConfig& cfg,
                         const MeasureRegistry& registry, const ResourceBundle& resources,
                         const ScoringOptions& options) {
  const auto wins = windows(doc, cfg);
  const auto& specs = registry.specs();
  DocumentResult r;
  r.contours.resize(specs.size());
  std::vector<std::vector<Score>> cov(specs.size());
  for (std::size_t m = 0; m < specs.size(); ++m) {
    r.contours[m].measure = specs[m].id.name;
    r.contours[m].doc_id = doc.id;
    r.contours[m].series.reserve(wins.size());
  }
  for (const Window& w : wins) {
    WindowScores ws = score_window(w, registry, resources, options);
    for (std::size_t m = 0; m < specs.size(); ++m) {
      r.contours[m].series.push_back(ws.scores[m]);
      cov[m].push_back(ws.coverage[m]);
    }
  }
  for (std::size_t m = 0; m < specs.size(); ++m) {
    r.contours[m].aggregate = aggregate(r.contours[m].series, cfg.aggregate);
    r.coverage.push_back(aggregate(cov[m], Aggregate::kMean));
  }
  return r;
}

}  // namespace

std::vector<Contour> score_document(const Document& doc, const ContourConfig& cfg,
                                    const MeasureRegistry& registry,
                                    const ResourceBundle& resources,
                                    const ScoringOptions& options) {
  registry.check_resources(resources);
  return score_one(doc, cfg, registry, resources, options).contours;
}

CorpusScores score_corpus(std::span<const Document> docs, const ContourConfig& cfg,
                          const MeasureRegistry& registry, const ResourceBundle& resources,
                          const ScoringOptions& options, unsigned threads) {
  cfg.validate();
  registry.check_resources(resources);
  std::vector<DocumentResult> results(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    results[i] = score_one(docs[i], cfg, registry, resources, options);
  });

  CorpusScores out;
  out.table.columns = registry.names();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out.table.row_ids.push_back(docs[i].id);
    std::vector<Score> row;
    for (const Contour& c : results[i].contours) row.push_back(c.aggregate);
    out.table.values.push_back(std::move(row));
    out.contours.push_back(std::move(results[i].contours));
    out.coverage.push_back(std::move(results[i].coverage));
  }
  return out;
}

std::string contours_csv(const std::vector<std::vector<Contour>>& contours) {
  std::string out = "doc_id,measure,window_index,score\n";
  for (const auto& doc : contours) {
    for (const Contour& c : doc) {
      for (std::size_t k = 0; k < c.series.size(); ++k) {
        out += csv_field(c.doc_id);
        out += ',';
        out += csv_field(c.measure);
        out += ',';
        out += std::to_string(k);
        out += ',';
        if (c.series[k]) out += format_score(*c.series[k]);
        out += '\n';
      }
    }
  }
  return out;
}

void write_contours(const std::vector<std::vector<Contour>>& contours,
                    const std::filesystem::path& path) {
  write_text_file(path, contours_csv(contours));
}

}  // namespace speechcx
