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

#include "speechcx/measures.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <unordered_set>

#include <zlib.h>

#include "speechcx/error.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

namespace {

bool has_prefix(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

Score ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<const Token*> words_of(const Window& w) {
  std::vector<const Token*> out;
  for (const Token* t : w.tokens()) {
    if (!is_punctuation_tag(t->pos)) out.push_back(t);
  }
  return out;
}

std::size_t distinct_forms(const std::vector<const Token*>& words) {
  std::unordered_set<std::string> types;
  for (const Token* t : words) types.insert(to_lower(t->form));
  return types.size();
}

}  // namespace

std::string_view np_norm_name(NpModifierNorm n) {
  return n == NpModifierNorm::kPerNounPhrase ? "per-np" : "per-sentence";
}

NpModifierNorm parse_np_norm(std::string_view name) {
  if (name == "per-np") return NpModifierNorm::kPerNounPhrase;
  if (name == "per-sentence") return NpModifierNorm::kPerSentence;
  throw ConfigError("unknown NP modifier normalization '" + std::string(name) +
                    "' (expected per-np or per-sentence)");
}

Window::Window(std::span<const Sentence> sentences, std::size_t first_sentence)
    : sentences_(sentences), first_(first_sentence) {
  for (const Sentence& s : sentences_) {
    for (const Token& t : s.tokens) tokens_.push_back(&t);
  }
}

std::vector<const TreeNode*> Window::trees() const {
  std::vector<const TreeNode*> out;
  for (const Sentence& s : sentences_) out.push_back(&s.tree);
  return out;
}

// ---- syntactic --------------------------------------------------------

Score evaluate_syntactic(const MeasureSpec& spec, const SyntacticCounts& counts,
                         NpModifierNorm norm) {
  const std::string_view f = spec.formula;
  if (has_prefix(f, "ratio:")) {
    const auto parts = split(f.substr(6), '/');
    const auto num = counts.get(parts.at(0));
    const auto den = counts.get(parts.at(1));
    if (!num || !den) throw RegistryError("measure '" + spec.id.name + "': unknown counter");
    return ratio(*num, *den);
  }
  if (has_prefix(f, "npmod:")) {
    const auto num = counts.get(f.substr(6));
    if (!num) throw RegistryError("measure '" + spec.id.name + "': unknown counter");
    return ratio(*num, norm == NpModifierNorm::kPerNounPhrase ? counts.noun_phrases
                                                              : counts.sentences);
  }
  throw RegistryError("measure '" + spec.id.name + "': unsupported syntactic formula");
}

ScoreMap syntactic_scores(const SyntacticCounts& counts, NpModifierNorm norm) {
  ScoreMap out;
  for (const MeasureSpec& spec : default_registry().specs()) {
    if (spec.id.category == Category::kSyntactic) {
      out[spec.id.name] = evaluate_syntactic(spec, counts, norm);
    }
  }
  return out;
}

// ---- lexical ----------------------------------------------------------

bool is_lexical_word(const Token& t) {
  const std::string_view pos = t.pos;
  if (has_prefix(pos, "NN") || has_prefix(pos, "JJ") || has_prefix(pos, "RB")) return true;
  if (has_prefix(pos, "VB")) {
    const std::string lemma = to_lower(t.lemma);
    return lemma != "be" && lemma != "have" && lemma != "do";
  }
  return false;
}

Score type_token_ratio(const Window& w) {
  const auto words = words_of(w);
  if (words.empty()) return std::nullopt;
  return static_cast<double>(distinct_forms(words)) / static_cast<double>(words.size());
}

Score corrected_ttr(const Window& w) {
  const auto words = words_of(w);
  if (words.empty()) return std::nullopt;
  return static_cast<double>(distinct_forms(words)) /
         std::sqrt(2.0 * static_cast<double>(words.size()));
}

Score lexical_density(const Window& w) {
  const auto words = words_of(w);
  if (words.empty()) return std::nullopt;
  std::size_t lexical = 0;
  for (const Token* t : words) lexical += is_lexical_word(*t) ? 1 : 0;
  return static_cast<double>(lexical) / static_cast<double>(words.size());
}

Score mean_word_chars(const Window& w) {
  const auto words = words_of(w);
  if (words.empty()) return std::nullopt;
  double total = 0;
  for (const Token* t : words) total += static_cast<double>(utf8_length(t->form));
  return total / static_cast<double>(words.size());
}

Score mean_word_syllables(const Window& w, const SyllableCounter& counter) {
  double total = 0;
  std::size_t n = 0;
  for (const Token* t : words_of(w)) {
    std::string letters;
    for (char c : t->form) {
      if (std::isalpha(static_cast<unsigned char>(c))) letters += c;
    }
    if (letters.empty()) continue;
    total += counter.count(letters);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return total / static_cast<double>(n);
}

Score sophistication(const Window& w, const FrequencyList& list) {
  std::set<std::string> types;
  for (const Token* t : words_of(w)) {
    if (is_lexical_word(*t)) types.insert(to_lower(t->form));
  }
  if (types.empty()) return std::nullopt;
  std::size_t rare = 0;
  for (const std::string& type : types) rare += list.is_sophisticated(type) ? 1 : 0;
  return static_cast<double>(rare) / static_cast<double>(types.size());
}

PrevalenceScore prevalence(const Window& w, const PrevalenceTable& table) {
  const auto words = words_of(w);
  double total = 0;
  std::size_t covered = 0;
  for (const Token* t : words) {
    if (const auto v = table.score(t->form)) {
      total += *v;
      ++covered;
    }
  }
  PrevalenceScore out;
  if (!words.empty()) out.coverage = static_cast<double>(covered) / static_cast<double>(words.size());
  if (covered > 0) out.mean = total / static_cast<double>(covered);
  return out;
}

namespace {

Score lexical_one(const Window& w, const MeasureSpec& spec, const ResourceBundle& res,
                  Score* coverage) {
  const std::string& f = spec.formula;
  if (f == "ttr") return type_token_ratio(w);
  if (f == "cttr") return corrected_ttr(w);
  if (f == "lexical_density") return lexical_density(w);
  if (f == "mean_word_chars") return mean_word_chars(w);
  if (f == "mean_word_syllables") return mean_word_syllables(w, res.syllables());
  if (f == "sophistication") return sophistication(w, res.frequency(spec.resources.at(0)));
  if (f == "prevalence") {
    const PrevalenceScore p = prevalence(w, res.prevalence(spec.resources.at(0)));
    if (coverage) *coverage = p.coverage;
    return p.mean;
  }
  throw RegistryError("measure '" + spec.id.name + "': unsupported lexical formula '" + f + "'");
}

}  // namespace

ScoreMap lexical_scores(const Window& w, std::span<const MeasureSpec> specs,
                        const ResourceBundle& resources) {
  ScoreMap out;
  for (const MeasureSpec& s : specs) {
    if (s.id.category == Category::kLexical) out[s.id.name] = lexical_one(w, s, resources, nullptr);
  }
  return out;
}

// ---- n-gram -----------------------------------------------------------

std::vector<std::string> window_ngrams(const Window& w, int n) {
  std::vector<std::string> grams;
  if (n < 1) return grams;
  const auto order = static_cast<std::size_t>(n);
  for (const Sentence& s : w.sentences()) {
    std::vector<std::string> forms;
    for (const Token& t : s.tokens) {
      if (!is_punctuation_tag(t.pos)) forms.push_back(to_lower(t.form));
    }
    for (std::size_t i = 0; i + order <= forms.size(); ++i) {
      std::string g = forms[i];
      for (std::size_t k = 1; k < order; ++k) {
        g += ' ';
        g += forms[i + k];
      }
      grams.push_back(std::move(g));
    }
  }
  return grams;
}

Score ngram_coverage(const Window& w, const NgramTable& table) {
  const auto grams = window_ngrams(w, table.n);
  if (grams.empty()) return std::nullopt;
  std::size_t hits = 0;
  for (const std::string& g : grams) hits += table.grams.count(g);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(grams.size());
}

ScoreMap ngram_scores(const Window& w, std::span<const MeasureSpec> specs,
                      const ResourceBundle& resources) {
  ScoreMap out;
  for (const MeasureSpec& s : specs) {
    if (s.id.category == Category::kNgram) {
      out[s.id.name] = ngram_coverage(w, resources.ngram(s.resources.at(0)));
    }
  }
  return out;
}

// ---- information-theoretic --------------------------------------------

Score deflate_ratio(std::string_view text, int level) {
  if (text.empty()) return std::nullopt;
  if (level < 1 || level > 9) throw ConfigError("deflate level must be in 1..9");
  z_stream strm{};
  // Negative window bits: raw RFC 1951 stream, no zlib/gzip container.
  if (deflateInit2(&strm, level, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error("deflateInit2 failed");
  }
  std::vector<unsigned char> out(deflateBound(&strm, static_cast<uLong>(text.size())) + 16);
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(text.data()));
  strm.avail_in = static_cast<uInt>(text.size());
  strm.next_out = out.data();
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&strm, Z_FINISH);
  const auto produced = strm.total_out;
  deflateEnd(&strm);
  if (rc != Z_STREAM_END) throw Error("deflate did not finish");
  return static_cast<double>(produced) / static_cast<double>(text.size());
}

std::string window_text(const Window& w) {
  std::string text;
  for (const Token* t : w.tokens()) {
    if (!text.empty()) text += ' ';
    text += to_lower(t->form);
  }
  return text;
}

Score koldef_score(const Window& w, int level) { return deflate_ratio(window_text(w), level); }

// ---- dispatch ---------------------------------------------------------

WindowScores score_window(const Window& w, const MeasureRegistry& registry,
                          const ResourceBundle& resources, const ScoringOptions& options) {
  WindowScores out;
  out.scores.resize(registry.size());
  out.coverage.resize(registry.size());

  std::optional<SyntacticCounts> counts;
  const auto& specs = registry.specs();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const MeasureSpec& spec = specs[i];
    switch (spec.id.category) {
      case Category::kSyntactic:
        if (!counts) counts = syntactic_counts(w.trees(), options.pattern_set());
        out.scores[i] = evaluate_syntactic(spec, *counts, options.np_norm);
        break;
      case Category::kLexical:
        out.scores[i] = lexical_one(w, spec, resources, &out.coverage[i]);
        break;
      case Category::kNgram:
        out.scores[i] = ngram_coverage(w, resources.ngram(spec.resources.at(0)));
        break;
      case Category::kInformation:
        out.scores[i] = koldef_score(w, options.deflate_level);
        break;
    }
  }
  return out;
}

}  // namespace speechcx
