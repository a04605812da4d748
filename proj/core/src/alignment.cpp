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

#include "speechcx/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "function_words_data.hpp"
#include "speechcx/error.hpp"
#include "speechcx/parallel.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

namespace {

// Lexicographic DP cost: fewer edits first, then more matches.
struct Cost {
  std::int64_t edits = 0;
  std::int64_t matches = 0;

  bool operator==(const Cost&) const = default;
  bool better_than(const Cost& o) const {
    return edits != o.edits ? edits < o.edits : matches > o.matches;
  }
};

std::vector<std::string> lowered(std::span<const std::string> words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(to_lower(w));
  return out;
}

double pct(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view edit_kind_name(EditKind k) {
  switch (k) {
    case EditKind::kMatch: return "match";
    case EditKind::kSubstitution: return "substitution";
    case EditKind::kInsertion: return "insertion";
    case EditKind::kDeletion: return "deletion";
  }
  return "match";
}

std::int64_t edit_distance(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const auto r = lowered(ref);
  const auto h = lowered(hyp);
  std::vector<std::int64_t> prev(h.size() + 1);
  std::vector<std::int64_t> cur(h.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= r.size(); ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= h.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + (r[i - 1] == h[j - 1] ? 0 : 1), prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[h.size()];
}

AlignmentReport align(std::span<const std::string> ref, std::span<const std::string> hyp,
                      std::string doc_id) {
  if (ref.empty()) throw DomainError("WER is undefined for an empty reference" +
                                     (doc_id.empty() ? std::string() : " ('" + doc_id + "')"));
  const auto r = lowered(ref);
  const auto h = lowered(hyp);
  const std::size_t n = r.size();
  const std::size_t m = h.size();
  const std::size_t width = m + 1;
  std::vector<Cost> d((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> Cost& { return d[i * width + j]; };

  for (std::size_t i = 1; i <= n; ++i) at(i, 0) = {static_cast<std::int64_t>(i), 0};
  for (std::size_t j = 1; j <= m; ++j) at(0, j) = {static_cast<std::int64_t>(j), 0};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const Cost& diag = at(i - 1, j - 1);
      Cost best = r[i - 1] == h[j - 1] ? Cost{diag.edits, diag.matches + 1}
                                       : Cost{diag.edits + 1, diag.matches};
      const Cost del{at(i - 1, j).edits + 1, at(i - 1, j).matches};
      const Cost ins{at(i, j - 1).edits + 1, at(i, j - 1).matches};
      if (del.better_than(best)) best = del;
      if (ins.better_than(best)) best = ins;
      at(i, j) = best;
    }
  }

  AlignmentReport rep;
  rep.doc_id = std::move(doc_id);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const Cost& here = at(i, j);
    if (i > 0 && j > 0) {
      const Cost& diag = at(i - 1, j - 1);
      const bool same = r[i - 1] == h[j - 1];
      const Cost via = same ? Cost{diag.edits, diag.matches + 1} : Cost{diag.edits + 1, diag.matches};
      if (via == here) {
        rep.ops.push_back({same ? EditKind::kMatch : EditKind::kSubstitution,
                           std::string(ref[i - 1]), std::string(hyp[j - 1])});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0) {
      const Cost& up = at(i - 1, j);
      if (Cost{up.edits + 1, up.matches} == here) {
        rep.ops.push_back({EditKind::kDeletion, std::string(ref[i - 1]), std::nullopt});
        --i;
        continue;
      }
    }
    rep.ops.push_back({EditKind::kInsertion, std::nullopt, std::string(hyp[j - 1])});
    --j;
  }
  std::reverse(rep.ops.begin(), rep.ops.end());

  for (const EditOp& op : rep.ops) {
    switch (op.kind) {
      case EditKind::kMatch: ++rep.matches; break;
      case EditKind::kSubstitution: ++rep.sub; break;
      case EditKind::kInsertion: ++rep.ins; break;
      case EditKind::kDeletion: ++rep.del; break;
    }
  }
  rep.n_ref = static_cast<std::int64_t>(n);
  rep.wer = pct(rep.errors(), rep.n_ref);
  return rep;
}

ErrorSummary corpus_wer(std::span<const AlignmentReport> reports) {
  ErrorSummary s;
  for (const auto& r : reports) {
    s.n_ref += r.n_ref;
    s.sub += r.sub;
    s.ins += r.ins;
    s.del += r.del;
  }
  if (s.n_ref == 0) throw DomainError("corpus WER is undefined for an empty reference corpus");
  s.sub_pct = pct(s.sub, s.n_ref);
  s.ins_pct = pct(s.ins, s.n_ref);
  s.del_pct = pct(s.del, s.n_ref);
  s.wer = pct(s.sub + s.ins + s.del, s.n_ref);
  return s;
}

std::string_view metric_name(ErrorMetric m) {
  switch (m) {
    case ErrorMetric::kWer: return "WER";
    case ErrorMetric::kSubstitutions: return "Substitutions";
    case ErrorMetric::kDeletions: return "Deletions";
    case ErrorMetric::kInsertions: return "Insertions";
  }
  return "WER";
}

std::vector<SpeakerStats> speaker_stats(
    const std::map<std::string, std::vector<AlignmentReport>>& by_speaker) {
  if (by_speaker.empty()) throw DomainError("speaker statistics need at least one speaker");
  std::vector<ErrorSummary> per;
  for (const auto& [speaker, reports] : by_speaker) per.push_back(corpus_wer(reports));

  std::vector<SpeakerStats> out;
  for (ErrorMetric metric : {ErrorMetric::kWer, ErrorMetric::kSubstitutions,
                             ErrorMetric::kDeletions, ErrorMetric::kInsertions}) {
    std::vector<double> v;
    for (const ErrorSummary& s : per) {
      switch (metric) {
        case ErrorMetric::kWer: v.push_back(s.wer); break;
        case ErrorMetric::kSubstitutions: v.push_back(s.sub_pct); break;
        case ErrorMetric::kDeletions: v.push_back(s.del_pct); break;
        case ErrorMetric::kInsertions: v.push_back(s.ins_pct); break;
      }
    }
    SpeakerStats st;
    st.metric = metric;
    st.speakers = v.size();
    st.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    st.min = *std::min_element(v.begin(), v.end());
    st.max = *std::max_element(v.begin(), v.end());
    if (v.size() > 1) {
      double ss = 0;
      for (double x : v) ss += (x - st.mean) * (x - st.mean);
      st.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    out.push_back(st);
  }
  return out;
}

std::string_view word_class_name(WordClass c) {
  switch (c) {
    case WordClass::kHesitation: return "hesitation";
    case WordClass::kFunction: return "function";
    case WordClass::kContent: return "content";
  }
  return "content";
}

namespace {

std::set<std::string> parse_word_list(std::string_view text) {
  std::set<std::string> out;
  for (auto line : split(text, '\n')) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.insert(to_lower(t));
  }
  return out;
}

}  // namespace

WordClassifier::WordClassifier()
    : hesitations_{"uh", "uhm", "um", "er", "eh", "mhm", "hm"},
      function_words_(parse_word_list(kFunctionWords)) {}

WordClassifier::WordClassifier(std::set<std::string> hesitations,
                               std::set<std::string> function_words) {
  for (const auto& w : hesitations) hesitations_.insert(to_lower(w));
  for (const auto& w : function_words) function_words_.insert(to_lower(w));
}

std::set<std::string> WordClassifier::load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open word list '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_word_list(text);
}

bool WordClassifier::is_hesitation(std::string_view word) const {
  return hesitations_.count(to_lower(word)) > 0;
}

WordClass WordClassifier::classify(std::string_view word) const {
  const std::string w = to_lower(word);
  if (hesitations_.count(w)) return WordClass::kHesitation;
  if (function_words_.count(w)) return WordClass::kFunction;
  return WordClass::kContent;
}

std::vector<WordClassErrorProfile> error_profile(std::span<const AlignmentReport> reports,
                                                 const WordClassifier& classifier) {
  // counts[kind][class]; kind 0 = sub, 1 = ins, 2 = del
  std::int64_t counts[3][3] = {};
  for (const auto& r : reports) {
    for (const EditOp& op : r.ops) {
      switch (op.kind) {
        case EditKind::kSubstitution:
          ++counts[0][static_cast<int>(classifier.classify(*op.ref_word))];
          break;
        case EditKind::kInsertion:
          ++counts[1][static_cast<int>(classifier.classify(*op.hyp_word))];
          break;
        case EditKind::kDeletion:
          ++counts[2][static_cast<int>(classifier.classify(*op.ref_word))];
          break;
        case EditKind::kMatch:
          break;
      }
    }
  }
  std::int64_t totals[3] = {};
  for (int k = 0; k < 3; ++k) {
    for (int c = 0; c < 3; ++c) totals[k] += counts[k][c];
  }
  auto share = [&](int k, int c) -> Score {
    if (totals[k] == 0) return std::nullopt;
    return pct(counts[k][c], totals[k]);
  };
  std::vector<WordClassErrorProfile> out;
  for (WordClass c : {WordClass::kHesitation, WordClass::kFunction, WordClass::kContent}) {
    const int ci = static_cast<int>(c);
    out.push_back({c, share(0, ci), share(1, ci), share(2, ci)});
  }
  return out;
}

std::vector<TranscriptLine> read_transcripts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open transcript file '" + path.string() + "'");
  std::vector<TranscriptLine> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (tab == std::string::npos) throw ValidationError(where + ": expected 'doc_id<TAB>words'");
    TranscriptLine t;
    t.doc_id = std::string(trim(std::string_view(line).substr(0, tab)));
    if (t.doc_id.empty()) throw ValidationError(where + ": empty doc_id");
    for (auto w : split_whitespace(std::string_view(line).substr(tab + 1))) t.words.emplace_back(w);
    if (!seen.insert(t.doc_id).second) {
      throw ValidationError(where + ": duplicate doc_id '" + t.doc_id + "'");
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::map<std::string, SpeakerInfo> read_speaker_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open speaker map '" + path.string() + "'");
  std::map<std::string, SpeakerInfo> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto parts = split(line, '\t');
    if (parts.size() != 3) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 'doc_id<TAB>speaker_id<TAB>subgroup'");
    }
    out[std::string(trim(parts[0]))] = {std::string(trim(parts[1])), std::string(trim(parts[2]))};
  }
  return out;
}

namespace {

using nlohmann::json;

json summary_json(const ErrorSummary& s) {
  return {{"n_ref", s.n_ref}, {"sub", s.sub},         {"ins", s.ins},
          {"del", s.del},     {"sub_pct", s.sub_pct}, {"ins_pct", s.ins_pct},
          {"del_pct", s.del_pct}, {"wer", s.wer}};
}

json score_json(const Score& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

std::string wer_report_json(const std::vector<TranscriptLine>& ref,
                            const std::vector<TranscriptLine>& hyp,
                            const std::map<std::string, SpeakerInfo>& speakers,
                            const WordClassifier& classifier, const WerOptions& options,
                            unsigned threads) {
  std::map<std::string, const TranscriptLine*> hyp_by_id;
  for (const auto& h : hyp) hyp_by_id[h.doc_id] = &h;
  std::set<std::string> ref_ids;
  for (const auto& r : ref) ref_ids.insert(r.doc_id);
  std::vector<std::string> unmatched;
  for (const auto& r : ref) {
    if (!hyp_by_id.count(r.doc_id)) unmatched.push_back(r.doc_id + " (reference only)");
  }
  for (const auto& h : hyp) {
    if (!ref_ids.count(h.doc_id)) unmatched.push_back(h.doc_id + " (hypothesis only)");
  }
  if (!unmatched.empty()) {
    throw ValidationError("reference and hypothesis ids differ: " + join(unmatched, ", "));
  }
  if (ref.empty()) throw ValidationError("no recordings to score");

  auto filtered = [&](const std::vector<std::string>& words) {
    if (!options.filter_hesitations) return words;
    std::vector<std::string> out;
    for (const auto& w : words) {
      if (!classifier.is_hesitation(w)) out.push_back(w);
    }
    return out;
  };

  std::vector<AlignmentReport> reports(ref.size());
  parallel_for(ref.size(), threads, [&](std::size_t i) {
    reports[i] = align(filtered(ref[i].words), filtered(hyp_by_id.at(ref[i].doc_id)->words),
                       ref[i].doc_id);
  });

  auto info_of = [&](const std::string& id) {
    const auto it = speakers.find(id);
    return it == speakers.end() ? SpeakerInfo{id, "all"} : it->second;
  };

  std::map<std::string, std::vector<AlignmentReport>> by_subgroup;
  std::map<std::string, std::map<std::string, std::vector<AlignmentReport>>> by_group_speaker;
  json recordings = json::array();
  for (const auto& r : reports) {
    const SpeakerInfo info = info_of(r.doc_id);
    by_subgroup[info.subgroup].push_back(r);
    by_group_speaker[info.subgroup][info.speaker_id].push_back(r);
    recordings.push_back({{"doc_id", r.doc_id},
                          {"speaker_id", info.speaker_id},
                          {"subgroup", info.subgroup},
                          {"n_ref", r.n_ref},
                          {"sub", r.sub},
                          {"ins", r.ins},
                          {"del", r.del},
                          {"wer", r.wer}});
  }

  json subgroups = json::object();
  for (const auto& [g, reps] : by_subgroup) subgroups[g] = summary_json(corpus_wer(reps));

  json speaker_section = json::object();
  for (const auto& [g, by_speaker] : by_group_speaker) {
    json rows = json::object();
    for (const SpeakerStats& st : speaker_stats(by_speaker)) {
      rows[std::string(metric_name(st.metric))] = {{"mean", st.mean},
                                                   {"sd", score_json(st.sd)},
                                                   {"min", st.min},
                                                   {"max", st.max},
                                                   {"speakers", st.speakers}};
    }
    speaker_section[g] = std::move(rows);
  }

  json classes = {{"substitution", json::object()},
                  {"insertion", json::object()},
                  {"deletion", json::object()}};
  for (const auto& p : error_profile(reports, classifier)) {
    const std::string name(word_class_name(p.word_class));
    classes["substitution"][name] = score_json(p.sub_pct);
    classes["insertion"][name] = score_json(p.ins_pct);
    classes["deletion"][name] = score_json(p.del_pct);
  }

  json report;
  report["options"] = {{"filter_hesitations", options.filter_hesitations},
                       {"hesitations", classifier.hesitations()}};
  report["corpus"] = summary_json(corpus_wer(reports));
  report["subgroups"] = std::move(subgroups);
  report["speakers"] = std::move(speaker_section);
  report["word_classes"] = std::move(classes);
  report["recordings"] = std::move(recordings);
  return report.dump(2) + "\n";
}

}  // namespace speechcx
