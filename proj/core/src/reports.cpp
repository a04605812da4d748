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

#include "speechcx/reports.hpp"

#include <nlohmann/json.hpp>

#include "speechcx/error.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/syntactic.hpp"
#include "speechcx/text_util.hpp"
#include "speechcx/version.hpp"

namespace speechcx {

namespace {

using nlohmann::ordered_json;

ordered_json score_json(const Score& s) { return s ? ordered_json(*s) : ordered_json(nullptr); }

std::string score_field(const Score& s) { return s ? format_score(*s) : std::string(); }

const DescriptiveStats* find_stats(const std::vector<DescriptiveStats>& all, const std::string& name) {
  for (const auto& d : all) {
    if (d.measure == name) return &d;
  }
  return nullptr;
}

}  // namespace

std::string documents_csv(const std::vector<Document>& docs) {
  std::string out = "doc_id,speaker_id,subgroup\n";
  for (const auto& d : docs) {
    out += csv_field(d.id) + "," + csv_field(d.speaker_id) + "," + csv_field(d.subgroup) + "\n";
  }
  return out;
}

std::map<std::string, std::string> read_document_groups(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    const auto fields = parse_csv_line(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (header) {
      if (fields.size() != 3 || fields[0] != "doc_id") {
        throw ValidationError(where + ": expected header 'doc_id,speaker_id,subgroup'");
      }
      header = false;
      continue;
    }
    if (fields.size() != 3) throw ValidationError(where + ": expected 3 fields");
    if (!out.emplace(fields[0], fields[2]).second) {
      throw ValidationError(where + ": duplicate doc_id '" + fields[0] + "'");
    }
  }
  return out;
}

std::string agreement_json(const AgreementReport& report, const ScoreTable& manual,
                           const ScoreTable& asr) {
  const auto dm = descriptive(manual);
  const auto da = descriptive(asr);
  const auto& s = report.summary;
  ordered_json j;
  j["summary"] = {{"measures", s.measures},
                  {"defined", s.defined},
                  {"mean_rho", score_json(s.mean_rho)},
                  {"sd_rho", score_json(s.sd_rho)},
                  {"strong", s.strong},
                  {"moderate", s.moderate},
                  {"weak", s.weak},
                  {"band_strong", s.bands.strong},
                  {"band_moderate", s.bands.moderate}};
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json groups = ordered_json::object();
    for (const auto& [g, rho] : r.rho_by_subgroup) groups[g] = score_json(rho);
    const auto* m = find_stats(dm, r.measure);
    const auto* a = find_stats(da, r.measure);
    rows.push_back({{"measure", r.measure},
                    {"rho", score_json(r.rho_overall)},
                    {"n_pairs", r.n_pairs},
                    {"rho_by_subgroup", std::move(groups)},
                    {"manual", {{"m", score_json(m ? m->mean : Score{})}, {"sd", score_json(m ? m->sd : Score{})}}},
                    {"asr", {{"m", score_json(a ? a->mean : Score{})}, {"sd", score_json(a ? a->sd : Score{})}}}});
  }
  j["measures"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string agreement_long_csv(const AgreementReport& report) {
  std::string out = "measure,subgroup,rho\n";
  for (const auto& r : report.results) {
    out += csv_field(r.measure) + ",overall," + score_field(r.rho_overall) + "\n";
    for (const auto& [g, rho] : r.rho_by_subgroup) {
      out += csv_field(r.measure) + "," + csv_field(g) + "," + score_field(rho) + "\n";
    }
  }
  return out;
}

std::string agreement_table_csv(const AgreementReport& report, const ScoreTable& manual,
                                const ScoreTable& asr) {
  const auto dm = descriptive(manual);
  const auto da = descriptive(asr);
  std::string out = "measure,manual_m,manual_sd,asr_m,asr_sd,rho\n";
  for (const auto& r : report.results) {
    const auto* m = find_stats(dm, r.measure);
    const auto* a = find_stats(da, r.measure);
    out += csv_field(r.measure) + "," + score_field(m ? m->mean : Score{}) + "," +
           score_field(m ? m->sd : Score{}) + "," + score_field(a ? a->mean : Score{}) + "," +
           score_field(a ? a->sd : Score{}) + "," + score_field(r.rho_overall) + "\n";
  }
  return out;
}

std::string ranking_csv(const FeatureRanking& ranking) {
  std::string out = "measure,fi,beta,converged,separated,n,above_mean\n";
  for (const auto& m : ranking.ranked) {
    out += csv_field(m.measure) + "," + format_score(m.fi) + "," + format_score(m.beta) + "," +
           (m.converged ? "true" : "false") + "," +
           (m.separated ? "true" : "false") + "," + std::to_string(m.n) + "," +
           (m.above_mean ? "true" : "false") + "\n";
  }
  return out;
}

std::string ranking_json(const FeatureRanking& ranking) {
  ordered_json j;
  j["mean_fi"] = ranking.ranked.empty() ? ordered_json(nullptr) : ordered_json(ranking.mean_fi);
  ordered_json rows = ordered_json::array();
  for (const auto& m : ranking.ranked) {
    rows.push_back({{"measure", m.measure},
                    {"fi", m.fi},
                    {"beta", m.beta},
                    {"converged", m.converged},
                    {"separated", m.separated},
                    {"n", m.n},
                    {"above_mean", m.above_mean}});
  }
  j["ranked"] = std::move(rows);
  ordered_json skipped = ordered_json::array();
  for (const auto& s : ranking.skipped) skipped.push_back({{"measure", s.measure}, {"reason", s.reason}});
  j["skipped"] = std::move(skipped);
  return j.dump(2) + "\n";
}

std::string selection_json(const SelectionResult& result, const SelectionOptions& options) {
  ordered_json j;
  j["options"] = {{"r_threshold", options.r_threshold},
                  {"nzv_freq_ratio", options.nzv_freq_ratio},
                  {"nzv_unique_percent", options.nzv_unique_percent},
                  {"min_variance", options.min_variance}};
  j["removed_nzv"] = result.removed_nzv;
  j["removed_corr"] = result.removed_corr;
  j["retained"] = result.retained;
  return j.dump(2) + "\n";
}

std::string run_metadata_json(const RunConfig& config, const MeasureRegistry& registry,
                              std::size_t documents) {
  ordered_json j;
  j["version"] = version_banner();
  j["tool_version"] = tool_version();
  j["registry_version"] = registry.version();
  j["pattern_version"] = default_pattern_set().version();
  j["documents"] = documents;
  j["measures"] = registry.names();
  j["config"] = ordered_json::parse(config.to_json());
  return j.dump(2) + "\n";
}

}  // namespace speechcx
