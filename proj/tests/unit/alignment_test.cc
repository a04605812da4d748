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

#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "speechcx/alignment.hpp"
#include "speechcx/error.hpp"
#include "test_support.hpp"

namespace speechcx {
namespace {

using Words = std::vector<std::string>;

TEST(Align, IdenticalSequences) {
  const Words w = {"the", "cat", "sat"};
  const auto r = align(w, w);
  EXPECT_EQ(r.sub + r.ins + r.del, 0);
  EXPECT_DOUBLE_EQ(r.wer, 0.0);
  EXPECT_EQ(r.matches, 3);
}

TEST(Align, SubstitutionAndDeletion) {
  const auto r = align(Words{"a", "b", "c", "d"}, Words{"a", "x", "c"});
  EXPECT_EQ(r.sub, 1);
  EXPECT_EQ(r.del, 1);
  EXPECT_EQ(r.ins, 0);
  EXPECT_DOUBLE_EQ(r.wer, 50.0);
}

TEST(Align, HesitationShiftPrefersIndelPair) {
  const auto r = align(Words{"uh", "the", "dog"}, Words{"the", "dog", "dog"});
  EXPECT_EQ(r.del, 1);
  EXPECT_EQ(r.ins, 1);
  EXPECT_EQ(r.sub, 0);
  EXPECT_NEAR(r.wer, 66.7, 0.05);
  ASSERT_EQ(r.ops.size(), 4u);
  EXPECT_EQ(r.ops[0], (EditOp{EditKind::kDeletion, "uh", std::nullopt}));
}

TEST(Align, EmptyHypothesisDeletesEverything) {
  const auto r = align(Words{"a", "b"}, Words{});
  EXPECT_EQ(r.del, 2);
  EXPECT_DOUBLE_EQ(r.wer, 100.0);
}

TEST(Align, WerMayExceedHundred) {
  const auto r = align(Words{"a"}, Words{"x", "y", "z"});
  EXPECT_DOUBLE_EQ(r.wer, 300.0);
}

TEST(Align, EmptyReferenceIsUndefined) {
  EXPECT_THROW(align(Words{}, Words{"a"}), DomainError);
}

TEST(Align, CaseInsensitive) {
  EXPECT_EQ(align(Words{"The", "Cat"}, Words{"the", "CAT"}).errors(), 0);
}

Words random_words(std::mt19937_64& rng, std::size_t max_len, std::size_t min_len = 0) {
  static const Words vocab = {"a", "b", "c", "d", "e"};
  std::uniform_int_distribution<std::size_t> len(min_len, max_len), pick(0, vocab.size() - 1);
  Words w(len(rng));
  for (auto& x : w) x = vocab[pick(rng)];
  return w;
}

TEST(AlignProperties, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const Words ref = random_words(rng, 6, 1), hyp = random_words(rng, 6);
    const auto r = align(ref, hyp);
    const auto expected = oracle::brute_force_edit_cost(ref, hyp);
    EXPECT_EQ(r.errors(), expected);
    EXPECT_EQ(edit_distance(ref, hyp), expected);
  }
}

TEST(AlignProperties, OpsAreConsistent) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const Words ref = random_words(rng, 10, 1), hyp = random_words(rng, 10);
    const auto r = align(ref, hyp);
    EXPECT_EQ(r.sub + r.del + r.matches, r.n_ref);
    Words rebuilt_ref, rebuilt_hyp;
    std::int64_t s = 0, i = 0, d = 0;
    for (const auto& op : r.ops) {
      if (op.ref_word) rebuilt_ref.push_back(*op.ref_word);
      if (op.hyp_word) rebuilt_hyp.push_back(*op.hyp_word);
      s += op.kind == EditKind::kSubstitution;
      i += op.kind == EditKind::kInsertion;
      d += op.kind == EditKind::kDeletion;
      if (op.kind == EditKind::kMatch) EXPECT_EQ(*op.ref_word, *op.hyp_word);
      if (op.kind == EditKind::kInsertion) EXPECT_FALSE(op.ref_word.has_value());
      if (op.kind == EditKind::kDeletion) EXPECT_FALSE(op.hyp_word.has_value());
    }
    EXPECT_EQ(rebuilt_ref, ref);
    EXPECT_EQ(rebuilt_hyp, hyp);
    EXPECT_EQ(s, r.sub);
    EXPECT_EQ(i, r.ins);
    EXPECT_EQ(d, r.del);
  }
}

TEST(AlignProperties, SwapExchangesInsertionsAndDeletions) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const Words a = random_words(rng, 9, 1), b = random_words(rng, 9, 1);
    const auto ab = align(a, b), ba = align(b, a);
    EXPECT_EQ(ab.ins, ba.del);
    EXPECT_EQ(ab.del, ba.ins);
    EXPECT_EQ(ab.sub, ba.sub);
  }
}

TEST(AlignProperties, AppendingSharedWordNeverCostsMore) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Words a = random_words(rng, 8, 1), b = random_words(rng, 8);
    const auto before = edit_distance(a, b);
    a.push_back("z");
    b.push_back("z");
    EXPECT_LE(edit_distance(a, b), before);
  }
}

AlignmentReport report_with(std::int64_t errors, std::int64_t n_ref) {
  AlignmentReport r;
  r.n_ref = n_ref;
  r.sub = errors;
  r.matches = n_ref - errors;
  r.wer = 100.0 * errors / n_ref;
  return r;
}

TEST(CorpusWer, MicroAverage) {
  const std::vector<AlignmentReport> reps = {report_with(2, 10), report_with(0, 10)};
  EXPECT_DOUBLE_EQ(corpus_wer(reps).wer, 10.0);
  const std::vector<AlignmentReport> one = {report_with(3, 7)};
  EXPECT_DOUBLE_EQ(corpus_wer(one).wer, one[0].wer);
  const std::vector<AlignmentReport> perfect = {report_with(0, 5), report_with(0, 4)};
  EXPECT_DOUBLE_EQ(corpus_wer(perfect).wer, 0.0);
}

TEST(SpeakerStats, SampleStatistics) {
  const std::map<std::string, std::vector<AlignmentReport>> by = {
      {"s1", {report_with(1, 10)}}, {"s2", {report_with(2, 10)}}, {"s3", {report_with(3, 10)}}};
  const auto stats = speaker_stats(by);
  const auto& wer = stats[0];
  EXPECT_EQ(wer.metric, ErrorMetric::kWer);
  EXPECT_DOUBLE_EQ(wer.mean, 20.0);
  EXPECT_DOUBLE_EQ(*wer.sd, 10.0);
  EXPECT_DOUBLE_EQ(wer.min, 10.0);
  EXPECT_DOUBLE_EQ(wer.max, 30.0);
}

TEST(SpeakerStats, SingleSpeakerHasNoSd) {
  const std::map<std::string, std::vector<AlignmentReport>> by = {
      {"s1", {report_with(1, 10), report_with(3, 10)}}};
  const auto wer = speaker_stats(by)[0];
  EXPECT_DOUBLE_EQ(wer.mean, 20.0);
  EXPECT_DOUBLE_EQ(wer.min, wer.max);
  EXPECT_FALSE(wer.sd.has_value());
}

AlignmentReport from_ops(std::vector<EditOp> ops) {
  AlignmentReport r;
  r.ops = std::move(ops);
  return r;
}

TEST(ErrorProfile, SingleHesitationDeletion) {
  const std::vector<AlignmentReport> reps = {from_ops({{EditKind::kDeletion, "uh", std::nullopt}})};
  const auto prof = error_profile(reps, WordClassifier{});
  EXPECT_DOUBLE_EQ(*prof[0].del_pct, 100.0);
  EXPECT_EQ(prof[0].word_class, WordClass::kHesitation);
  EXPECT_FALSE(prof[0].ins_pct.has_value());
  EXPECT_FALSE(prof[0].sub_pct.has_value());
}

TEST(ErrorProfile, SplitsAcrossClasses) {
  const std::vector<AlignmentReport> reps = {from_ops({{EditKind::kDeletion, "uh", std::nullopt},
                                                       {EditKind::kDeletion, "the", std::nullopt},
                                                       {EditKind::kInsertion, std::nullopt, "dog"},
                                                       {EditKind::kSubstitution, "um", "the"}})};
  const auto prof = error_profile(reps, WordClassifier{});
  EXPECT_DOUBLE_EQ(*prof[0].del_pct, 50.0);
  EXPECT_DOUBLE_EQ(*prof[1].del_pct, 50.0);
  EXPECT_DOUBLE_EQ(*prof[2].del_pct, 0.0);
  EXPECT_DOUBLE_EQ(*prof[2].ins_pct, 100.0);
  EXPECT_DOUBLE_EQ(*prof[0].sub_pct, 100.0);
}

TEST(WordClassifier, DefaultLexicons) {
  const WordClassifier c;
  EXPECT_EQ(c.classify("Um"), WordClass::kHesitation);
  EXPECT_EQ(c.classify("the"), WordClass::kFunction);
  EXPECT_EQ(c.classify("because"), WordClass::kFunction);
  EXPECT_EQ(c.classify("elephant"), WordClass::kContent);
  const WordClassifier custom({"ähm"}, {"the"});
  EXPECT_EQ(custom.classify("uh"), WordClass::kContent);
  EXPECT_EQ(custom.classify("ähm"), WordClass::kHesitation);
}

TEST(WerReport, FixtureSectionsAndFilterFlag) {
  const auto ref = read_transcripts(testing::fixture("ref.txt"));
  const auto hyp = read_transcripts(testing::fixture("hyp.txt"));
  const auto speakers = read_speaker_map(testing::fixture("speakers.tsv"));
  const WordClassifier classifier;
  const auto plain = nlohmann::json::parse(wer_report_json(ref, hyp, speakers, classifier, {}, 2));
  for (const char* key : {"corpus", "subgroups", "speakers", "word_classes", "recordings"}) {
    EXPECT_TRUE(plain.contains(key)) << key;
  }
  for (const char* key : {"sub", "ins", "del", "wer", "n_ref"}) {
    EXPECT_TRUE(plain["corpus"].contains(key)) << key;
  }
  EXPECT_TRUE(plain["subgroups"].contains("school"));
  EXPECT_TRUE(plain["subgroups"].contains("university"));
  const auto filtered = nlohmann::json::parse(
      wer_report_json(ref, hyp, speakers, classifier, WerOptions{true}, 2));
  EXPECT_LT(filtered["corpus"]["n_ref"].get<std::int64_t>(), plain["corpus"]["n_ref"].get<std::int64_t>());
  EXPECT_EQ(wer_report_json(ref, hyp, speakers, classifier, {}, 1),
            wer_report_json(ref, hyp, speakers, classifier, {}, 3));
}

TEST(WerReport, IdenticalTranscriptsHaveZeroWer) {
  const auto ref = read_transcripts(testing::fixture("ref.txt"));
  const auto out = nlohmann::json::parse(wer_report_json(ref, ref, {}, WordClassifier{}, {}, 1));
  EXPECT_DOUBLE_EQ(out["corpus"]["wer"].get<double>(), 0.0);
}

TEST(WerReport, MismatchedIdsAreListed) {
  const std::vector<TranscriptLine> ref = {{"a", {"x"}}, {"b", {"y"}}};
  const std::vector<TranscriptLine> hyp = {{"a", {"x"}}, {"c", {"y"}}};
  try {
    wer_report_json(ref, hyp, {}, WordClassifier{}, {}, 1);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("b"), std::string::npos);
    EXPECT_NE(msg.find("c"), std::string::npos);
  }
}

}  // namespace
}  // namespace speechcx
