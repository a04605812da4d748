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

#ifndef SPEECHCX_MEASURES_HPP_
#define SPEECHCX_MEASURES_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechcx/lexres.hpp"
#include "speechcx/registry.hpp"
#include "speechcx/syntactic.hpp"
#include "speechcx/transcript.hpp"

namespace speechcx {

// Default Deflate level (zlib's range is 1..9).
inline constexpr int kDefaultDeflateLevel = 5;

// Denominator of NP.PreMod / NP.PostMod.
enum class NpModifierNorm { kPerNounPhrase, kPerSentence };

std::string_view np_norm_name(NpModifierNorm n);
NpModifierNorm parse_np_norm(std::string_view name);  // "per-np" | "per-sentence"

struct ScoringOptions {
  int deflate_level = kDefaultDeflateLevel;
  NpModifierNorm np_norm = NpModifierNorm::kPerNounPhrase;
  const PatternSet* patterns = nullptr;  // nullptr selects default_pattern_set()

  const PatternSet& pattern_set() const {
    return patterns ? *patterns : default_pattern_set();
  }
};

// A contiguous run of sentences from one document.
class Window {
 public:
  explicit Window(std::span<const Sentence> sentences, std::size_t first_sentence = 0);

  std::span<const Sentence> sentences() const { return sentences_; }
  std::size_t first_sentence() const { return first_; }
  // All tokens, punctuation included, in text order.
  const std::vector<const Token*>& tokens() const { return tokens_; }
  std::vector<const TreeNode*> trees() const;

 private:
  std::span<const Sentence> sentences_;
  std::size_t first_;
  std::vector<const Token*> tokens_;
};

using ScoreMap = std::map<std::string, Score, std::less<>>;

// ---- syntactic --------------------------------------------------------

// The twelve default syntactic ratios; zero denominators give missing.
ScoreMap syntactic_scores(const SyntacticCounts& counts,
                          NpModifierNorm norm = NpModifierNorm::kPerNounPhrase);

Score evaluate_syntactic(const MeasureSpec& spec, const SyntacticCounts& counts,
                         NpModifierNorm norm);

// ---- lexical ----------------------------------------------------------

// Content-word POS: NN*, JJ*, RB*, and VB* unless the lemma is be/have/do.
bool is_lexical_word(const Token& token);

Score type_token_ratio(const Window& w);
Score corrected_ttr(const Window& w);
Score lexical_density(const Window& w);
Score mean_word_chars(const Window& w);
// Tokens without ASCII letters are skipped; others are scored on their
// letters only.
Score mean_word_syllables(const Window& w, const SyllableCounter& counter);
// Share of lexical word types beyond the list's cutoff (or absent from it).
Score sophistication(const Window& w, const FrequencyList& list);

struct PrevalenceScore {
  Score mean;       // over covered tokens
  Score coverage;   // covered / non-punctuation tokens
};
PrevalenceScore prevalence(const Window& w, const PrevalenceTable& table);

ScoreMap lexical_scores(const Window& w, std::span<const MeasureSpec> specs,
                        const ResourceBundle& resources);

// ---- n-gram -----------------------------------------------------------

// Within-sentence grams of lower-cased non-punctuation forms.
std::vector<std::string> window_ngrams(const Window& w, int n);

// 100 * attested grams / all grams; missing when the window has none.
Score ngram_coverage(const Window& w, const NgramTable& table);

ScoreMap ngram_scores(const Window& w, std::span<const MeasureSpec> specs,
                      const ResourceBundle& resources);

// ---- information-theoretic --------------------------------------------

// Raw Deflate (RFC 1951) size over input size. Missing for empty text.
Score deflate_ratio(std::string_view text, int level = kDefaultDeflateLevel);

// Lower-cased token forms joined by single spaces.
std::string window_text(const Window& w);

Score koldef_score(const Window& w, int level = kDefaultDeflateLevel);

// ---- dispatch ---------------------------------------------------------

struct WindowScores {
  std::vector<Score> scores;    // registry order
  std::vector<Score> coverage;  // prevalence coverage, registry order; missing elsewhere
};

// One entry per registered measure. Throws RegistryError/ConfigError when a
// measure cannot be resolved.
WindowScores score_window(const Window& w, const MeasureRegistry& registry,
                          const ResourceBundle& resources, const ScoringOptions& options = {});

}  // namespace speechcx

#endif  // SPEECHCX_MEASURES_HPP_
