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

#include "speechcx/syntactic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "speechcx/error.hpp"
#include "speechcx/text_util.hpp"
#include "syntactic_patterns_data.hpp"

namespace speechcx {

namespace {

std::string expand_macros(std::string_view text, const std::map<std::string, std::string>& macros,
                          std::size_t line_no) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '@') {
      out += text[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
      ++j;
    }
    const std::string name(text.substr(i + 1, j - i - 1));
    const auto it = macros.find(name);
    if (it == macros.end()) {
      throw PatternError("line " + std::to_string(line_no) + ": undefined macro @" + name);
    }
    out += '(';
    out += it->second;
    out += ')';
    i = j;
  }
  return out;
}

}  // namespace

std::optional<std::int64_t> SyntacticCounts::get(std::string_view name) const {
  if (name == "words") return words;
  if (name == "sentences") return sentences;
  if (name == "clauses") return clauses;
  if (name == "t_units") return t_units;
  if (name == "dependent_clauses") return dependent_clauses;
  if (name == "complex_t_units") return complex_t_units;
  if (name == "coordinate_phrases") return coordinate_phrases;
  if (name == "complex_nominals") return complex_nominals;
  if (name == "noun_phrases") return noun_phrases;
  if (name == "np_premodifiers") return np_premodifiers;
  if (name == "np_postmodifiers") return np_postmodifiers;
  return std::nullopt;
}

SyntacticCounts& SyntacticCounts::operator+=(const SyntacticCounts& o) {
  words += o.words;
  sentences += o.sentences;
  clauses += o.clauses;
  t_units += o.t_units;
  dependent_clauses += o.dependent_clauses;
  complex_t_units += o.complex_t_units;
  coordinate_phrases += o.coordinate_phrases;
  complex_nominals += o.complex_nominals;
  noun_phrases += o.noun_phrases;
  np_premodifiers += o.np_premodifiers;
  np_postmodifiers += o.np_postmodifiers;
  return *this;
}

PatternSet PatternSet::parse(std::string_view text) {
  PatternSet set;
  std::map<std::string, std::string> macros;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no);

    if (line.front() == '%') {
      const auto fields = split_whitespace(line);
      if (fields.size() != 2 || fields[0] != "%version") {
        throw PatternError(where + ": expected '%version <id>'");
      }
      set.version_ = std::string(fields[1]);
      continue;
    }
    if (line.front() == '@') {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw PatternError(where + ": macro without '='");
      const std::string name(trim(line.substr(1, eq - 1)));
      if (name.empty()) throw PatternError(where + ": empty macro name");
      macros[name] = expand_macros(trim(line.substr(eq + 1)), macros, line_no);
      continue;
    }
    const std::size_t def = line.find(":=");
    if (def == std::string_view::npos) throw PatternError(where + ": expected '<counter> := <pattern>'");
    const std::string counter(trim(line.substr(0, def)));
    if (std::find(kPatternCounters.begin(), kPatternCounters.end(), counter) ==
        kPatternCounters.end()) {
      throw PatternError(where + ": unknown counter '" + counter + "'");
    }
    const std::string expr = expand_macros(trim(line.substr(def + 2)), macros, line_no);
    TreePattern pattern = [&] {
      try {
        return TreePattern::compile(expr);
      } catch (const PatternError& e) {
        throw PatternError(where + ": " + e.what());
      }
    }();
    auto it = std::find_if(set.counters_.begin(), set.counters_.end(),
                           [&](const auto& entry) { return entry.first == counter; });
    if (it == set.counters_.end()) {
      set.counters_.emplace_back(counter, std::vector<TreePattern>{});
      it = std::prev(set.counters_.end());
    }
    it->second.push_back(std::move(pattern));
  }
  if (set.version_.empty()) throw ConfigError("pattern set has no %version line");
  for (std::string_view counter : kPatternCounters) {
    if (set.rules(counter).empty()) {
      throw ConfigError("pattern set defines no rule for counter '" + std::string(counter) + "'");
    }
  }
  return set;
}

PatternSet PatternSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open pattern set '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::int64_t PatternSet::count(std::string_view counter, const TreeNode& tree) const {
  const auto it = std::find_if(counters_.begin(), counters_.end(),
                               [&](const auto& entry) { return entry.first == counter; });
  if (it == counters_.end()) return 0;
  if (it->second.size() == 1) return static_cast<std::int64_t>(match_count(tree, it->second[0]));
  std::set<const TreeNode*> hits;
  for (const TreePattern& p : it->second) {
    for (const TreeNode* n : match_nodes(tree, p)) hits.insert(n);
  }
  return static_cast<std::int64_t>(hits.size());
}

std::vector<std::string> PatternSet::rules(std::string_view counter) const {
  std::vector<std::string> out;
  for (const auto& [name, patterns] : counters_) {
    if (name != counter) continue;
    for (const TreePattern& p : patterns) out.push_back(p.source());
  }
  return out;
}

std::string_view default_pattern_text() { return kDefaultSyntacticPatterns; }

const PatternSet& default_pattern_set() {
  static const PatternSet set = PatternSet::parse(kDefaultSyntacticPatterns);
  return set;
}

SyntacticCounts syntactic_counts(const TreeNode& tree, const PatternSet& patterns) {
  SyntacticCounts c;
  c.sentences = 1;
  for (const TreeNode* leaf : leaves(tree)) {
    if (!is_punctuation_tag(leaf->label)) ++c.words;
  }
  c.clauses = patterns.count("clauses", tree);
  c.t_units = patterns.count("t_units", tree);
  c.dependent_clauses = patterns.count("dependent_clauses", tree);
  c.complex_t_units = patterns.count("complex_t_units", tree);
  c.coordinate_phrases = patterns.count("coordinate_phrases", tree);
  c.complex_nominals = patterns.count("complex_nominals", tree);
  c.noun_phrases = patterns.count("noun_phrases", tree);
  c.np_premodifiers = patterns.count("np_premodifiers", tree);
  c.np_postmodifiers = patterns.count("np_postmodifiers", tree);
  return c;
}

SyntacticCounts syntactic_counts(std::span<const TreeNode> trees, const PatternSet& patterns) {
  SyntacticCounts total;
  for (const TreeNode& t : trees) total += syntactic_counts(t, patterns);
  return total;
}

SyntacticCounts syntactic_counts(std::span<const TreeNode* const> trees,
                                 const PatternSet& patterns) {
  SyntacticCounts total;
  for (const TreeNode* t : trees) total += syntactic_counts(*t, patterns);
  return total;
}

}  // namespace speechcx
