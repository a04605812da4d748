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

#ifndef SPEECHCX_ALIGNMENT_HPP_
#define SPEECHCX_ALIGNMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechcx/transcript.hpp"

namespace speechcx {

enum class EditKind { kMatch, kSubstitution, kInsertion, kDeletion };

std::string_view edit_kind_name(EditKind k);

struct EditOp {
  EditKind kind;
  std::optional<std::string> ref_word;  // absent for insertions
  std::optional<std::string> hyp_word;  // absent for deletions

  bool operator==(const EditOp&) const = default;
};

struct AlignmentReport {
  std::string doc_id;
  std::vector<EditOp> ops;
  std::int64_t n_ref = 0;
  std::int64_t matches = 0;
  std::int64_t sub = 0;
  std::int64_t ins = 0;
  std::int64_t del = 0;
  double wer = 0;  // percent, may exceed 100

  std::int64_t errors() const { return sub + ins + del; }
};

// Minimum edit distance under unit costs (Wagner-Fischer), case-insensitive.
std::int64_t edit_distance(std::span<const std::string> ref, std::span<const std::string> hyp);

// Word alignment with unit costs. Among minimum-cost alignments the one with
// the most matches is chosen; remaining ties are broken during the backtrace
// in the order match/substitution, deletion, insertion. Words are compared
// after lower-casing. Throws DomainError when ref is empty.
AlignmentReport align(std::span<const std::string> ref, std::span<const std::string> hyp,
                      std::string doc_id = {});

struct ErrorSummary {
  std::int64_t n_ref = 0;
  std::int64_t sub = 0;
  std::int64_t ins = 0;
  std::int64_t del = 0;
  double sub_pct = 0;
  double ins_pct = 0;
  double del_pct = 0;
  double wer = 0;
};

// Micro average: summed counts over summed reference length.
ErrorSummary corpus_wer(std::span<const AlignmentReport> reports);

enum class ErrorMetric { kWer, kSubstitutions, kDeletions, kInsertions };

std::string_view metric_name(ErrorMetric m);

struct SpeakerStats {
  ErrorMetric metric;
  std::size_t speakers = 0;
  double mean = 0;
  Score sd;  // sample SD (n - 1); missing for a single speaker
  double min = 0;
  double max = 0;
};

// Per-speaker micro values of WER/Sub/Del/Ins, summarized across speakers.
std::vector<SpeakerStats> speaker_stats(
    const std::map<std::string, std::vector<AlignmentReport>>& by_speaker);

enum class WordClass { kHesitation, kFunction, kContent };

std::string_view word_class_name(WordClass c);

// Hesitation lexicon, then closed-class function words, else content.
class WordClassifier {
 public:
  // Default hesitations {uh, uhm, um, er, eh, mhm, hm} and the shipped
  // function-word list.
  WordClassifier();
  WordClassifier(std::set<std::string> hesitations, std::set<std::string> function_words);

  // One word per line; '#' comments allowed. Throws IoError.
  static std::set<std::string> load_word_list(const std::filesystem::path& path);

  WordClass classify(std::string_view word) const;
  bool is_hesitation(std::string_view word) const;

  const std::set<std::string>& hesitations() const { return hesitations_; }
  const std::set<std::string>& function_words() const { return function_words_; }

 private:
  std::set<std::string> hesitations_;
  std::set<std::string> function_words_;
};

struct WordClassErrorProfile {
  WordClass word_class;
  Score sub_pct;  // missing when the corpus has no substitutions
  Score ins_pct;
  Score del_pct;
};

// Substitutions and deletions are classified by the reference word,
// insertions by the hypothesis word. One entry per class, in enum order.
std::vector<WordClassErrorProfile> error_profile(std::span<const AlignmentReport> reports,
                                                 const WordClassifier& classifier);

// ---- transcript files -------------------------------------------------

struct TranscriptLine {
  std::string doc_id;
  std::vector<std::string> words;
};

// "doc_id<TAB>space-separated words" per line. Duplicate ids are an error.
std::vector<TranscriptLine> read_transcripts(const std::filesystem::path& path);

// Speaker map "doc_id<TAB>speaker_id<TAB>subgroup".
struct SpeakerInfo {
  std::string speaker_id;
  std::string subgroup;
};
std::map<std::string, SpeakerInfo> read_speaker_map(const std::filesystem::path& path);

struct WerOptions {
  bool filter_hesitations = false;
};

// Aligns paired transcripts and builds the JSON report with per-recording,
// per-subgroup, per-speaker, corpus and word-class sections. Recordings
// without speaker info are their own speaker in subgroup "all". Throws
// ValidationError listing unmatched ids when ref and hyp ids differ.
std::string wer_report_json(const std::vector<TranscriptLine>& ref,
                            const std::vector<TranscriptLine>& hyp,
                            const std::map<std::string, SpeakerInfo>& speakers,
                            const WordClassifier& classifier, const WerOptions& options,
                            unsigned threads = 0);

}  // namespace speechcx

#endif  // SPEECHCX_ALIGNMENT_HPP_
