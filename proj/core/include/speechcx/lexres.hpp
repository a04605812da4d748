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

#ifndef SPEECHCX_LEXRES_HPP_
#define SPEECHCX_LEXRES_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace speechcx {

inline constexpr std::int64_t kDefaultSophisticationCutoff = 2000;

// Ranked word list. Words ranked above the cutoff (or absent) count as
// sophisticated.
struct FrequencyList {
  std::string name;
  std::unordered_map<std::string, std::int64_t> ranks;  // lower-cased keys
  std::int64_t cutoff = kDefaultSophisticationCutoff;

  std::optional<std::int64_t> rank(std::string_view word) const;
  bool is_sophisticated(std::string_view word) const;
};

// Word -> opaque prevalence score.
struct PrevalenceTable {
  std::string name;
  std::unordered_map<std::string, double> values;  // lower-cased keys

  std::optional<double> score(std::string_view word) const;
};

enum class Register { kSpoken, kMagazine, kFiction, kNews, kAcademic };

std::string_view register_name(Register r);
// Throws ConfigError for unknown names.
Register parse_register(std::string_view name);

// Register-specific n-gram list. Membership is exact on lower-cased,
// single-space-joined grams; frequencies are kept but not used for scoring.
struct NgramTable {
  std::string name;
  Register reg = Register::kSpoken;
  int n = 3;
  std::unordered_map<std::string, double> grams;

  bool contains(std::string_view gram) const;
};

// Lower-cases and collapses whitespace runs to single spaces.
std::string normalize_gram(std::string_view gram);

// Syllable counting: exceptions first, then the vowel-group heuristic.
class SyllableCounter {
 public:
  SyllableCounter() = default;
  explicit SyllableCounter(std::unordered_map<std::string, int> exceptions);

  // word must be non-empty and alphabetic (ASCII letters); otherwise
  // DomainError.
  int count(std::string_view word) const;

  std::size_t exception_count() const { return exceptions_.size(); }

 private:
  std::unordered_map<std::string, int> exceptions_;
};

// Vowel-group count over a,e,i,o,u,y; minus one for a final consonant+e
// when that leaves at least one group; never below 1. Throws DomainError
// on empty or non-alphabetic input.
int syllables(std::string_view word);

// Loaded resources addressable by id. Immutable once built.
//
// A directory is described by manifest.tsv, one resource per line:
//
//   frequency   <id>  <file>  [cutoff=<rank>]
//   prevalence  <id>  <file>
//   ngram       <id>  <file>  register=<name>  n=<order>
//   syllables   <id>  <file>
//
// Frequency files hold "word<TAB>rank", prevalence files "word<TAB>score",
// n-gram files "gram<TAB>frequency" and syllable files "word<TAB>count".
// Lines starting with '#' and blank lines are ignored everywhere.
class ResourceBundle {
 public:
  static constexpr std::string_view kManifestName = "manifest.tsv";

  // Throws ConfigError for a missing directory/manifest/file (listing every
  // missing resource) and ValidationError with file:line for bad rows.
  static ResourceBundle load(const std::filesystem::path& dir);

  void add(FrequencyList list);
  void add(PrevalenceTable table);
  void add(NgramTable table);
  void set_syllables(SyllableCounter counter) { syllables_ = std::move(counter); }

  // Lookups by id; throw ConfigError naming the id when absent.
  const FrequencyList& frequency(std::string_view id) const;
  const PrevalenceTable& prevalence(std::string_view id) const;
  const NgramTable& ngram(std::string_view id) const;
  const SyllableCounter& syllables() const { return syllables_; }

  bool has(std::string_view id) const;
  // Frequency lists + prevalence tables + n-gram tables.
  std::size_t size() const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, FrequencyList, std::less<>> frequency_;
  std::map<std::string, PrevalenceTable, std::less<>> prevalence_;
  std::map<std::string, NgramTable, std::less<>> ngram_;
  SyllableCounter syllables_;
};

FrequencyList load_frequency_list(const std::filesystem::path& path, std::string name,
                                  std::int64_t cutoff = kDefaultSophisticationCutoff);
PrevalenceTable load_prevalence_table(const std::filesystem::path& path, std::string name);
NgramTable load_ngram_table(const std::filesystem::path& path, std::string name, Register reg,
                            int n);
SyllableCounter load_syllable_exceptions(const std::filesystem::path& path);

}  // namespace speechcx

#endif  // SPEECHCX_LEXRES_HPP_
