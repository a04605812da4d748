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

#ifndef SPEECHCX_SYNTACTIC_HPP_
#define SPEECHCX_SYNTACTIC_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "speechcx/tree_pattern.hpp"
#include "speechcx/treebank.hpp"

namespace speechcx {

// Production-unit counts aggregated over one or more parsed sentences.
struct SyntacticCounts {
  std::int64_t words = 0;
  std::int64_t sentences = 0;
  std::int64_t clauses = 0;
  std::int64_t t_units = 0;
  std::int64_t dependent_clauses = 0;
  std::int64_t complex_t_units = 0;
  std::int64_t coordinate_phrases = 0;
  std::int64_t complex_nominals = 0;
  std::int64_t noun_phrases = 0;
  std::int64_t np_premodifiers = 0;
  std::int64_t np_postmodifiers = 0;

  // Counter by its rule-file name ("t_units", "words", ...).
  std::optional<std::int64_t> get(std::string_view name) const;

  SyntacticCounts& operator+=(const SyntacticCounts& other);
  friend SyntacticCounts operator+(SyntacticCounts a, const SyntacticCounts& b) { return a += b; }
  bool operator==(const SyntacticCounts&) const = default;
};

// Counters that a pattern set must define; words and sentences are counted
// directly from the trees.
inline constexpr std::array<std::string_view, 9> kPatternCounters = {
    "clauses",          "t_units",          "dependent_clauses",
    "complex_t_units",  "coordinate_phrases", "complex_nominals",
    "noun_phrases",     "np_premodifiers",  "np_postmodifiers"};

// A versioned set of counter rules. Text format, one item per line:
//
//   # comment
//   %version <string>
//   @MACRO = <pattern text>          textual macro, expands to "(<text>)"
//   <counter> := <pattern>           several rules for one counter are unioned
//
// Each node is counted at most once per counter.
class PatternSet {
 public:
  // Throws PatternError (bad rule) or ConfigError (missing counter / version).
  static PatternSet parse(std::string_view text);
  static PatternSet load(const std::string& path);

  const std::string& version() const { return version_; }

  // Number of distinct nodes of tree matched by any rule of counter.
  std::int64_t count(std::string_view counter, const TreeNode& tree) const;

  // Expanded rule patterns of one counter, for auditing.
  std::vector<std::string> rules(std::string_view counter) const;

 private:
  std::string version_;
  std::vector<std::pair<std::string, std::vector<TreePattern>>> counters_;
};

// The rule set shipped in core/data/syntactic_patterns.rules.
const PatternSet& default_pattern_set();
std::string_view default_pattern_text();

// Counts for one tree. Words are non-punctuation leaves.
SyntacticCounts syntactic_counts(const TreeNode& tree, const PatternSet& patterns);

// Sum of per-tree counts.
SyntacticCounts syntactic_counts(std::span<const TreeNode> trees, const PatternSet& patterns);
SyntacticCounts syntactic_counts(std::span<const TreeNode* const> trees,
                                 const PatternSet& patterns);

}  // namespace speechcx

#endif  // SPEECHCX_SYNTACTIC_HPP_
