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

#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "speechcx/error.hpp"
#include "speechcx/syntactic.hpp"
#include "speechcx/text_util.hpp"
#include "test_support.hpp"

namespace speechcx {
namespace {

SyntacticCounts counts_of(const std::string& parse) {
  return syntactic_counts(parse_ptb(parse), default_pattern_set());
}

TEST(SyntacticCounts, SimpleClause) {
  const auto c = counts_of("(S (NP (DT The) (NN dog)) (VP (VBD barked)))");
  EXPECT_EQ(c.words, 3);
  EXPECT_EQ(c.sentences, 1);
  EXPECT_EQ(c.clauses, 1);
  EXPECT_EQ(c.t_units, 1);
  EXPECT_EQ(c.dependent_clauses, 0);
}

TEST(SyntacticCounts, ThatComplement) {
  const auto c = counts_of(
      "(S (NP (PRP I)) (VP (VBP think) (SBAR (IN that) (S (NP (PRP he)) (VP (VBD left))))))");
  EXPECT_EQ(c.words, 5);
  EXPECT_EQ(c.sentences, 1);
  EXPECT_EQ(c.clauses, 2);
  EXPECT_EQ(c.t_units, 1);
  EXPECT_EQ(c.dependent_clauses, 1);
  EXPECT_EQ(c.complex_t_units, 1);
}

TEST(SyntacticCounts, DuplicatedSentenceDoublesCounts) {
  const TreeNode t = parse_ptb("(S (NP (DT The) (NN dog)) (VP (VBD barked)))");
  const std::vector<TreeNode> two = {t, t};
  const auto one = syntactic_counts(t, default_pattern_set());
  EXPECT_EQ(syntactic_counts(two, default_pattern_set()), one + one);
}

TEST(SyntacticCounts, FragmentHasNoClauses) {
  const auto c = counts_of("(ROOT (FRAG (INTJ (UH uh)) (NP (DT the) (NN weekend)) (. .)))");
  EXPECT_EQ(c.words, 3);
  EXPECT_EQ(c.sentences, 1);
  EXPECT_EQ(c.clauses, 0);
  EXPECT_EQ(c.t_units, 0);
}

struct FixtureRow {
  std::vector<std::int64_t> expected;
  std::string parse;
};

std::vector<FixtureRow> read_fixture() {
  std::ifstream in(testing::fixture("syntactic_fixture.tsv"));
  std::vector<FixtureRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    FixtureRow row;
    std::istringstream nums(line.substr(0, tab));
    std::int64_t v;
    while (nums >> v) row.expected.push_back(v);
    row.parse = line.substr(tab + 1);
    rows.push_back(row);
  }
  return rows;
}

constexpr const char* kFixtureFields[] = {
    "words",           "sentences",          "clauses",          "t_units",
    "dependent_clauses", "complex_t_units",  "coordinate_phrases", "complex_nominals",
    "noun_phrases",    "np_premodifiers",    "np_postmodifiers"};

TEST(SyntacticCounts, HandParsedFixture) {
  const auto rows = read_fixture();
  ASSERT_EQ(rows.size(), 10u);
  SyntacticCounts total;
  for (const auto& row : rows) {
    ASSERT_EQ(row.expected.size(), 11u);
    const auto c = counts_of(row.parse);
    total += c;
    for (std::size_t k = 0; k < 11; ++k) {
      EXPECT_EQ(*c.get(kFixtureFields[k]), row.expected[k]) << kFixtureFields[k] << " in " << row.parse;
    }
  }
  EXPECT_EQ(total.clauses, 13);
  EXPECT_EQ(total.words, 62);
}

TEST(SyntacticCounts, AdditiveOverFixture) {
  const auto rows = read_fixture();
  std::vector<TreeNode> trees;
  SyntacticCounts sum;
  for (const auto& r : rows) {
    trees.push_back(parse_ptb(r.parse));
    sum += counts_of(r.parse);
  }
  EXPECT_EQ(syntactic_counts(trees, default_pattern_set()), sum);
  const std::span<const TreeNode> all(trees);
  EXPECT_EQ(syntactic_counts(all.first(4), default_pattern_set()) +
                syntactic_counts(all.subspan(4), default_pattern_set()),
            sum);
}

TEST(SyntacticCounts, InvariantsOnCorpus) {
  const auto docs = load_corpus(testing::fixture("corpus.jsonl"));
  for (const auto& d : docs) {
    for (const auto& s : d.sentences) {
      const auto c = syntactic_counts(s.tree, default_pattern_set());
      EXPECT_LE(c.dependent_clauses, c.clauses);
      EXPECT_LE(c.t_units, c.clauses + c.sentences);
      if (c.noun_phrases == 0) {
        EXPECT_EQ(c.np_premodifiers, 0);
        EXPECT_EQ(c.np_postmodifiers, 0);
      }
    }
  }
}

TEST(SyntacticCounts, GetRejectsUnknownName) {
  SyntacticCounts c;
  EXPECT_FALSE(c.get("paragraphs").has_value());
  EXPECT_EQ(c.get("words"), 0);
}

TEST(PatternSet, DefaultCoversEveryCounter) {
  const auto& set = default_pattern_set();
  EXPECT_FALSE(set.version().empty());
  for (auto name : kPatternCounters) EXPECT_FALSE(set.rules(name).empty()) << name;
}

TEST(PatternSet, MacrosAndUnion) {
  const auto set = PatternSet::parse(
      "%version t-1\n"
      "@V = {VBD,VBZ}\n"
      "# comment\n"
      "clauses := S < (VP < @V)\n"
      "noun_phrases := NP > S\n"
      "noun_phrases := NP\n"
      "t_units := S > ROOT\n"
      "dependent_clauses := S >> SBAR\n"
      "complex_t_units := S > ROOT\n"
      "coordinate_phrases := NP <% CC\n"
      "complex_nominals := NP << JJ\n"
      "np_premodifiers := JJ > NP\n"
      "np_postmodifiers := PP > NP\n");
  EXPECT_EQ(set.version(), "t-1");
  const TreeNode t = parse_ptb("(S (NP (PRP I)) (VP (VBD saw) (NP (PRP you))))");
  EXPECT_EQ(set.count("clauses", t), 1);
  // Union: the subject NP matches both rules but is counted once.
  EXPECT_EQ(set.count("noun_phrases", t), 2);
  EXPECT_EQ(set.count("t_units", t), 0);
}

TEST(PatternSet, RejectsBadRules) {
  EXPECT_THROW(PatternSet::parse("%version x\nclauses = S\n"), ValidationError);
  EXPECT_THROW(PatternSet::parse("%version x\nbogus := S\n"), ValidationError);
  EXPECT_THROW(PatternSet::parse("%version x\nclauses := S <\n"), PatternError);
  EXPECT_THROW(PatternSet::parse("%version x\nclauses := @NOPE\n"), ValidationError);
  EXPECT_THROW(PatternSet::parse("clauses := S\n"), ValidationError);
  // Every counter needs at least one rule.
  EXPECT_THROW(PatternSet::parse("%version x\nclauses := S\n"), ConfigError);
}

}  // namespace
}  // namespace speechcx
