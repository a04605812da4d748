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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
//
//   speechcx_acceptance [path/to/speechcx]
//
// The CLI path is only needed by the determinism criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "speechcx/alignment.hpp"
#include "speechcx/clm.hpp"
#include "speechcx/contour.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/lexres.hpp"
#include "speechcx/measures.hpp"
#include "speechcx/registry.hpp"
#include "speechcx/reports.hpp"
#include "speechcx/stats.hpp"
#include "speechcx/syntactic.hpp"
#include "speechcx/text_util.hpp"
#include "speechcx/transcript.hpp"
#include "test_support.hpp"

namespace speechcx {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records the first failure only; later ones rarely add information.
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- 1 ------------------------------------------------------------------

Outcome alignment_oracle() {
  Outcome out;
  std::mt19937_64 rng(2024);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1), ref_len(1, 12), hyp_len(0, 12);
  double align_seconds = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> ref(ref_len(rng)), hyp(hyp_len(rng));
    for (auto& w : ref) w = vocab[word(rng)];
    for (auto& w : hyp) w = vocab[word(rng)];
    const auto t0 = Clock::now();
    const AlignmentReport r = align(ref, hyp);
    align_seconds += seconds_since(t0);
    const auto expected = oracle::memo_edit_cost(ref, hyp);
    out.require(r.errors() == expected, "trial " + std::to_string(trial) + ": cost " +
                                            std::to_string(r.errors()) + " vs oracle " +
                                            std::to_string(expected));
    out.require(r.n_ref == static_cast<std::int64_t>(ref.size()), "n_ref differs from |ref|");
  }
  out.require(align_seconds < 1.0, "align took " + fmt(align_seconds) + " s");
  if (out.pass) out.detail = "200 pairs exact, align time " + fmt(align_seconds) + " s";
  return out;
}

// ---- 2 ------------------------------------------------------------------

Outcome spearman_oracle() {
  Outcome out;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> len(3, 20), small(0, 4);
  std::normal_distribution<double> g;
  double worst = 0;
  int trials = 0;
  while (trials < 100) {
    const int n = len(rng);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      // Small integers produce ties; a continuous draw mixes in unique values.
      x[i] = rng() % 3 == 0 ? g(rng) : small(rng);
      y[i] = rng() % 2 == 0 ? g(rng) : small(rng);
    }
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    if (*xmin == *xmax || *ymin == *ymax) continue;
    ++trials;
    const double d = std::abs(spearman(x, y) - oracle::spearman_rho(x, y));
    worst = std::max(worst, d);
    out.require(d <= 1e-12, "vector " + std::to_string(trials) + " differs by " + fmt(d));
  }
  const double tied = spearman(std::vector<double>{1, 2, 2, 3}, std::vector<double>{1, 3, 2, 4});
  out.require(std::abs(tied - 0.9487) <= 1e-4, "tie example gave " + fmt(tied));
  if (out.pass) out.detail = "100 vectors, max diff " + fmt(worst) + ", tie example " + fmt(tied);
  return out;
}

// ---- 3 ------------------------------------------------------------------

std::vector<Sentence> random_window(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(1, 20), count(1, 5);
  std::vector<Sentence> s;
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) s.push_back(testing::random_sentence(rng, len(rng)));
  return s;
}

// Same words, order shuffled within and across sentences.
std::vector<Sentence> shuffled(const std::vector<Sentence>& in, std::mt19937_64& rng) {
  std::vector<std::pair<std::string, std::string>> words;
  std::vector<std::size_t> sizes;
  for (const auto& s : in) {
    sizes.push_back(s.tokens.size());
    for (const auto& t : s.tokens) words.emplace_back(t.form, t.pos);
  }
  std::shuffle(words.begin(), words.end(), rng);
  std::vector<Sentence> out;
  std::size_t at = 0;
  for (std::size_t n : sizes) {
    out.push_back(testing::flat_sentence({words.begin() + at, words.begin() + at + n}));
    at += n;
  }
  return out;
}

Outcome measure_identities(const ResourceBundle& resources) {
  Outcome out;
  const MeasureRegistry& registry = default_registry();
  std::mt19937_64 rng(313);

  // Closed ranges; percentages for n-gram coverage.
  std::map<std::string, std::pair<double, double>> bounds = {
      {"TTR", {0, 1}}, {"LD", {0, 1}}, {"ANC", {0, 1}}, {"BNC", {0, 1}}, {"NGSL", {0, 1}}};
  for (const auto& spec : registry.specs()) {
    if (spec.id.category == Category::kNgram) bounds[spec.id.name] = {0, 100};
    if (spec.id.category == Category::kSyntactic) bounds[spec.id.name] = {0, INFINITY};
  }
  bounds["cTTR"] = {0, INFINITY};
  bounds["MLWc"] = {1, INFINITY};
  bounds["MLWs"] = {1, INFINITY};
  bounds["KolDef"] = {0, INFINITY};

  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto sentences = random_window(rng);
    const Window w(sentences);
    std::size_t n = 0;
    for (const Token* t : w.tokens()) n += is_punctuation_tag(t->pos) ? 0 : 1;
    const Score ttr = type_token_ratio(w), cttr = corrected_ttr(w);
    if (!ttr || !cttr) {
      out.require(n == 0, "TTR missing on a window with words");
      continue;
    }
    const double d = std::abs(*cttr - *ttr * std::sqrt(n / 2.0));
    worst = std::max(worst, d);
    out.require(d <= 1e-12, "cTTR identity off by " + fmt(d));

    const WindowScores ws = score_window(w, registry, resources);
    for (std::size_t m = 0; m < registry.size(); ++m) {
      const auto& name = registry.specs()[m].id.name;
      const auto it = bounds.find(name);
      if (it == bounds.end() || !ws.scores[m]) continue;
      const double v = *ws.scores[m];
      out.require(v >= it->second.first && v <= it->second.second,
                  name + " = " + fmt(v) + " outside its range");
    }
    for (std::size_t m = 0; m < registry.size(); ++m) {
      if (ws.coverage[m]) {
        out.require(*ws.coverage[m] >= 0 && *ws.coverage[m] <= 1, "prevalence coverage out of [0, 1]");
      }
    }
  }

  const std::set<std::string> bag_of_words = {"TTR", "cTTR", "LD", "MLWc", "MLWs", "ANC", "BNC", "NGSL",
                                              "Prevalence.UKWF", "Prevalence.Crowd",
                                              "Prevalence.FemaleSDAP"};
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_window(rng);
    const auto b = shuffled(a, rng);
    const WindowScores sa = score_window(Window(a), registry, resources);
    const WindowScores sb = score_window(Window(b), registry, resources);
    for (std::size_t m = 0; m < registry.size(); ++m) {
      const auto& name = registry.specs()[m].id.name;
      if (!bag_of_words.count(name)) continue;
      const bool same = sa.scores[m].has_value() == sb.scores[m].has_value() &&
                        (!sa.scores[m] || std::abs(*sa.scores[m] - *sb.scores[m]) <= 1e-12);
      out.require(same, name + " changed under shuffling");
    }
  }
  if (out.pass) out.detail = "1000 windows, max cTTR diff " + fmt(worst) + ", 100 shuffles invariant";
  return out;
}

// ---- 4 ------------------------------------------------------------------

Outcome syntactic_fixture() {
  Outcome out;
  static const char* kFields[] = {"words",         "sentences",          "clauses",
                                  "t_units",       "dependent_clauses",  "complex_t_units",
                                  "coordinate_phrases", "complex_nominals", "noun_phrases",
                                  "np_premodifiers", "np_postmodifiers"};
  const std::string text = read_text_file(testing::fixture("syntactic_fixture.tsv"));
  std::size_t rows = 0;
  bool saw_think = false;
  for (std::string_view line : split(text, '\n')) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    const auto tab = line.find('\t');
    const std::string parse(line.substr(tab + 1));
    std::vector<std::int64_t> expected;
    for (std::string_view f : split(line.substr(0, tab), ' ')) {
      if (!f.empty()) expected.push_back(std::stoll(std::string(f)));
    }
    out.require(expected.size() == 11, "fixture row " + std::to_string(rows) + " malformed");
    if (expected.size() != 11) continue;
    const auto counts = syntactic_counts(parse_ptb(parse), default_pattern_set());
    for (std::size_t k = 0; k < 11; ++k) {
      out.require(*counts.get(kFields[k]) == expected[k],
                  std::string(kFields[k]) + " = " + std::to_string(*counts.get(kFields[k])) +
                      ", hand count " + std::to_string(expected[k]) + " in row " + std::to_string(rows));
    }
    if (parse.find("(VBP think)") != std::string::npos && parse.find("(PRP he)") != std::string::npos) {
      saw_think = true;
      const auto s = syntactic_scores(counts);
      out.require(*s.at("C/S") == 2.0 && *s.at("DepC/C") == 0.5 && *s.at("MLC") == 2.5 &&
                      *s.at("DepC/T") == 1.0,
                  "'I think that he left' ratios differ");
    }
  }
  out.require(rows == 10, "expected 10 fixture sentences, found " + std::to_string(rows));
  out.require(saw_think, "'I think that he left' missing from fixture");
  if (out.pass) out.detail = "10 sentences x 11 counts exact; C/S 2, DepC/C 0.5, MLC 2.5, DepC/T 1";
  return out;
}

// ---- 5 ------------------------------------------------------------------

ScoreTable gaussian_table(const std::vector<std::vector<double>>& target, std::size_t n,
                          std::uint64_t seed) {
  const auto l = oracle::cholesky(target);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ScoreTable t;
  for (std::size_t a = 0; a < target.size(); ++a) t.columns.push_back("m" + std::to_string(a));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> z(target.size());
    for (auto& v : z) v = g(rng);
    std::vector<Score> row;
    for (std::size_t a = 0; a < target.size(); ++a) {
      double s = 0;
      for (std::size_t b = 0; b <= a; ++b) s += l[a][b] * z[b];
      row.push_back(s);
    }
    t.row_ids.push_back("r" + std::to_string(i));
    t.values.push_back(std::move(row));
  }
  return t;
}

Outcome selection_procedure() {
  Outcome out;
  // Three groups of three near-collinear columns and two independent ones.
  const std::size_t k = 11;
  std::vector<std::vector<double>> target(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) target[a][b] = 1;
      else if (a < 9 && b < 9 && a / 3 == b / 3) target[a][b] = 0.97;
    }
  }
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ScoreTable t = gaussian_table(target, 400, seed);
    const SelectionResult r = select_measures(t);
    for (std::size_t a = 0; a < r.retained.size(); ++a) {
      for (std::size_t b = a + 1; b < r.retained.size(); ++b) {
        std::vector<double> x, y;
        const auto ia = *t.column_index(r.retained[a]), ib = *t.column_index(r.retained[b]);
        for (const auto& row : t.values) {
          x.push_back(*row[ia]);
          y.push_back(*row[ib]);
        }
        const double rr = std::abs(oracle::pearson_r(x, y));
        worst = std::max(worst, rr);
        out.require(rr <= 0.9, r.retained[a] + " and " + r.retained[b] + " kept with |r| = " + fmt(rr));
      }
    }
    out.require(r.retained.size() == 5, "expected 5 retained columns, got " +
                                            std::to_string(r.retained.size()));
  }
  const std::vector<std::vector<double>> hand = {{1, 0.95, 0.5}, {0.95, 1, 0.1}, {0.5, 0.1, 1}};
  const auto removed = correlation_filter(hand, 0.9);
  out.require(removed == std::vector<std::size_t>{0}, "hand trace did not remove exactly column A");
  if (out.pass) out.detail = "5 datasets, max retained |r| " + fmt(worst) + "; hand trace removes A";
  return out;
}

// ---- 6 ------------------------------------------------------------------

struct Ordinal {
  std::vector<double> x;
  std::vector<int> y;
};

Ordinal ordinal_data(std::mt19937_64& rng, std::size_t n, int classes, double beta) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(1e-9, 1 - 1e-9);
  Ordinal d;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g(rng);
    const double p = u(rng);
    const double latent = beta * x + std::log(p / (1 - p));
    int y = 1;
    for (int c = 1; c < classes; ++c) {
      if (latent > -1.5 + 3.0 * (c - 1) / std::max(1, classes - 2)) ++y;
    }
    d.x.push_back(x);
    d.y.push_back(y);
  }
  return d;
}

Outcome clm_correctness() {
  Outcome out;
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g;

  double worst_logit = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int classes = 2 + trial % 4;
    std::vector<int> y;
    for (int c = 1; c <= classes; ++c) {
      const int count = trial % 2 == 0 ? 12 : 2 + static_cast<int>(rng() % 25);
      y.insert(y.end(), count, c);
    }
    std::vector<double> x(y.size());
    for (auto& v : x) v = g(rng);
    ClmOptions opt;
    opt.fix_beta_zero = true;
    const ClmFit fit = fit_clm(x, y, opt);
    const auto expected = oracle::cumulative_logits(y);
    out.require(fit.thresholds.size() == expected.size(), "intercept-only threshold count");
    for (std::size_t j = 0; j < expected.size() && j < fit.thresholds.size(); ++j) {
      const double d = std::abs(fit.thresholds[j] - expected[j]);
      worst_logit = std::max(worst_logit, d);
      out.require(d <= 1e-6, "intercept-only threshold off by " + fmt(d));
    }
  }

  int converged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = ordinal_data(rng, 40 + trial, 2 + trial % 4, 0.3 + (trial % 7) * 0.3);
    if (std::set<int>(d.y.begin(), d.y.end()).size() < 2) continue;
    const ClmFit fit = fit_clm(d.x, d.y);
    if (!fit.converged) continue;
    ++converged;
    for (std::size_t j = 1; j < fit.thresholds.size(); ++j) {
      out.require(fit.thresholds[j - 1] < fit.thresholds[j],
                  "thresholds not increasing in dataset " + std::to_string(trial));
    }
  }

  double worst_fi = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = ordinal_data(rng, 80, 3 + trial % 3, 1.0);
    const double base = fit_clm(d.x, d.y).fi;
    for (const auto& [a, b] : {std::pair{2.5, 7.0}, std::pair{-0.4, 100.0}, std::pair{1000.0, -3.0}}) {
      std::vector<double> x2;
      for (double v : d.x) x2.push_back(a * v + b);
      const double diff = std::abs(fit_clm(x2, d.y).fi - base);
      worst_fi = std::max(worst_fi, diff);
      out.require(diff <= 1e-6, "FI moved by " + fmt(diff) + " under an affine map");
    }
  }
  if (out.pass) {
    out.detail = "logit diff " + fmt(worst_logit) + "; " + std::to_string(converged) +
                 "/100 converged, all increasing; FI diff " + fmt(worst_fi);
  }
  return out;
}

// ---- 7 ------------------------------------------------------------------

Outcome koldef_ordering() {
  Outcome out;
  std::mt19937_64 rng(7007);
  const std::vector<std::string> vocab = {
      "river", "table", "quickly", "under", "garden", "yellow", "listen", "paper", "window",
      "silver", "mountain", "teacher", "seven", "orange", "before", "travel", "morning", "little",
      "between", "answer", "kitchen", "bright", "winter", "people", "letter", "simple", "forest",
      "music", "number", "open", "family", "happy", "market", "station", "water", "friend"};
  int wins = 0;
  double max_gap = -1;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> phrase(4 + trial % 5);
    for (auto& w : phrase) w = vocab[rng() % vocab.size()];
    std::vector<std::string> words;
    std::size_t bytes = 0;
    while (bytes < 500 + 10 * trial) {
      for (const auto& w : phrase) {
        words.push_back(w);
        bytes += w.size() + 1;
      }
    }
    std::vector<std::string> mixed = words;
    std::shuffle(mixed.begin(), mixed.end(), rng);
    const auto join = [](const std::vector<std::string>& ws) {
      std::string s;
      for (const auto& w : ws) s += (s.empty() ? "" : " ") + w;
      return s;
    };
    const std::string rep = join(words), shuf = join(mixed);
    out.require(rep.size() == shuf.size() && rep.size() >= 500, "text pair length");
    const double a = *deflate_ratio(rep), b = *deflate_ratio(shuf);
    if (a < b) ++wins;
    max_gap = std::max(max_gap, a - b);
  }
  out.require(wins == 50, "repetitive text smaller in only " + std::to_string(wins) + "/50");
  if (out.pass) out.detail = "50/50 pairs, largest rep-shuffled gap " + fmt(max_gap);
  return out;
}

// ---- 8 ------------------------------------------------------------------

// Removes the leaves whose index is in `drop`, then any phrase left empty.
bool prune(TreeNode& node, std::size_t& leaf, const std::set<std::size_t>& drop) {
  if (node.children.empty()) return !drop.count(leaf++);
  std::vector<TreeNode> kept;
  for (auto& c : node.children) {
    if (prune(c, leaf, drop)) kept.push_back(std::move(c));
  }
  node.children = std::move(kept);
  return !node.children.empty();
}

// Copy of docs with a fraction of function-word tokens deleted, as a
// recogniser dropping short unstressed words would.
std::vector<Document> drop_function_words(const std::vector<Document>& docs, double fraction,
                                          std::uint64_t seed) {
  const WordClassifier classifier;
  struct Site {
    std::size_t doc, sent, leaf;
  };
  std::vector<Site> sites;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t s = 0; s < docs[d].sentences.size(); ++s) {
      const auto& toks = docs[d].sentences[s].tokens;
      for (std::size_t i = 0; i < toks.size(); ++i) {
        if (classifier.classify(toks[i].form) == WordClass::kFunction) sites.push_back({d, s, i});
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(sites.begin(), sites.end(), rng);
  sites.resize(static_cast<std::size_t>(std::lround(fraction * sites.size())));
  std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>> drop;
  for (const auto& s : sites) drop[{s.doc, s.sent}].insert(s.leaf);

  std::vector<Document> out = docs;
  for (const auto& [key, leaves] : drop) {
    Sentence& sent = out[key.first].sentences[key.second];
    TreeNode tree = sent.tree;
    std::size_t counter = 0;
    if (leaves.size() >= sent.tokens.size() || !prune(tree, counter, leaves)) continue;
    std::vector<Token> tokens;
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      if (!leaves.count(i)) tokens.push_back(sent.tokens[i]);
    }
    sent = make_sentence(std::move(tokens), to_string(tree));
  }
  return out;
}

Outcome agreement_harness(const ResourceBundle& resources) {
  Outcome out;
  const auto t0 = Clock::now();
  const auto manual_docs = load_corpus(testing::fixture("corpus.jsonl"));
  out.require(manual_docs.size() >= 20, "fixture corpus has fewer than 20 documents");
  const MeasureRegistry& registry = default_registry();
  const ContourConfig cfg;
  const auto manual = score_corpus(manual_docs, cfg, registry, resources);
  const auto copy = score_corpus(manual_docs, cfg, registry, resources);
  std::map<std::string, std::string> groups;
  for (const auto& d : manual_docs) groups[d.id] = d.subgroup;

  const AgreementReport self = agreement_analysis(manual.table, copy.table, groups);
  std::size_t non_constant = 0;
  for (const auto& r : self.results) {
    if (!r.rho_overall) continue;  // constant column
    ++non_constant;
    out.require(std::abs(*r.rho_overall - 1.0) <= 1e-12, r.measure + " self rho " + fmt(*r.rho_overall));
  }
  out.require(non_constant > 0, "every measure constant on the fixture");

  const auto asr_docs = drop_function_words(manual_docs, 0.10, 99);
  const auto asr = score_corpus(asr_docs, cfg, registry, resources);
  const AgreementReport rep = agreement_analysis(manual.table, asr.table, groups);
  const auto j = nlohmann::json::parse(agreement_json(rep, manual.table, asr.table));
  const double elapsed = seconds_since(t0);

  out.require(rep.results.size() == 30, "report has " + std::to_string(rep.results.size()) + " rows");
  out.require(j["measures"].size() == 30, "JSON report does not list 30 measures");
  std::size_t strong = 0, moderate = 0, weak = 0;
  std::vector<double> rhos;
  for (const auto& r : rep.results) {
    out.require(r.rho_overall.has_value(), r.measure + " has no rho");
    if (!r.rho_overall) continue;
    const double v = *r.rho_overall;
    out.require(v >= -1 && v <= 1, r.measure + " rho " + fmt(v) + " outside [-1, 1]");
    rhos.push_back(v);
    if (v > rep.summary.bands.strong) ++strong;
    else if (v > rep.summary.bands.moderate) ++moderate;
    else ++weak;
  }
  const auto& s = j["summary"];
  out.require(s["strong"] == strong && s["moderate"] == moderate && s["weak"] == weak,
              "band counts disagree with per-measure rho");
  out.require(strong + moderate + weak == rhos.size(), "bands do not partition the measures");
  out.require(s.contains("mean_rho") && s["mean_rho"].is_number(), "summary lacks mean_rho");
  out.require(s.contains("sd_rho") && s["sd_rho"].is_number(), "summary lacks sd_rho");
  double mean = 0;
  if (!rhos.empty() && s["mean_rho"].is_number()) {
    mean = std::accumulate(rhos.begin(), rhos.end(), 0.0) / rhos.size();
    out.require(std::abs(s["mean_rho"].get<double>() - mean) <= 1e-12, "mean_rho is not the mean");
  }
  out.require(elapsed < 30.0, "pipeline took " + fmt(elapsed) + " s");
  if (out.pass) {
    out.detail = std::to_string(non_constant) + " self rho = 1; corrupted: mean rho " + fmt(mean) +
                 ", SD " + fmt(s["sd_rho"].get<double>()) + ", bands " + std::to_string(strong) + "/" +
                 std::to_string(moderate) + "/" + std::to_string(weak) + ", " + fmt(elapsed) + " s";
  }
  return out;
}

// ---- 9 ------------------------------------------------------------------

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

int run_cli(const std::string& exe, const std::string& args, const fs::path& log) {
  const std::string cmd = quote(exe) + " " + args + " >" + quote(log) + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

Outcome determinism(const std::string& exe) {
  Outcome out;
  if (exe.empty()) {
    out.require(false, "no CLI path given");
    return out;
  }
  const fs::path root = fs::temp_directory_path() / ("speechcx_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path fx = testing::fixture_dir();
  const auto manual_docs = load_corpus(fx / "corpus.jsonl");
  write_corpus(drop_function_words(manual_docs, 0.10, 99), root / "asr.jsonl");

  const std::vector<std::string> commands = {"analyze", "wer", "agree", "select", "rank"};
  for (const char* run : {"run1", "run2"}) {
    const fs::path d = root / run;
    const std::string threads = std::string(" --threads ") + (run[3] == '1' ? "3" : "1");
    const std::string res = " --resources " + quote(fx / "resources");
    const std::vector<std::pair<std::string, std::string>> steps = {
        {"analyze", "analyze --corpus " + quote(fx / "corpus.jsonl") + res + " -o " + quote(d / "analyze")},
        {"analyze", "analyze --corpus " + quote(root / "asr.jsonl") + res + " -o " + quote(d / "asr")},
        {"wer", "wer --ref " + quote(fx / "ref.txt") + " --hyp " + quote(fx / "hyp.txt") + " --speakers " +
                    quote(fx / "speakers.tsv") + " -o " + quote(d / "wer")},
        {"agree", "agree --manual " + quote(d / "analyze/scores.csv") + " --asr " +
                      quote(d / "asr/scores.csv") + " --groups " + quote(d / "analyze/documents.csv") +
                      " -o " + quote(d / "agree")},
        {"select", "select --scores " + quote(d / "analyze/scores.csv") + " -o " + quote(d / "select")},
        {"rank", "rank --scores " + quote(d / "analyze/scores.csv") + " --labels " +
                     quote(fx / "labels.csv") + " -o " + quote(d / "rank")},
    };
    for (const auto& [name, args] : steps) {
      const int rc = run_cli(exe, args + threads, root / (std::string(run) + "_" + name + ".log"));
      out.require(rc == 0, name + " exited with " + std::to_string(rc));
    }
  }
  std::size_t files = 0;
  std::set<std::string> covered;
  for (const auto& entry : fs::recursive_directory_iterator(root / "run1")) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), root / "run1");
    const fs::path other = root / "run2" / rel;
    ++files;
    covered.insert(rel.begin()->string());
    out.require(fs::exists(other) && read_text_file(entry.path()) == read_text_file(other),
                rel.string() + " differs between runs");
  }
  for (const auto& c : {"analyze", "asr", "wer", "agree", "select", "rank"}) {
    out.require(covered.count(c) == 1, std::string("no output from ") + c);
  }
  if (out.pass) {
    out.detail = std::to_string(files) + " files byte-identical across two runs (3 vs 1 threads)";
    fs::remove_all(root);
  }
  return out;
}

}  // namespace
}  // namespace speechcx

int main(int argc, char** argv) {
  using namespace speechcx;
  const std::string exe = argc > 1 ? argv[1] : "";
  const ResourceBundle resources = ResourceBundle::load(testing::fixture("resources"));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"alignment matches exhaustive oracle", alignment_oracle},
      {"spearman matches rank-then-pearson oracle", spearman_oracle},
      {"measure identities, bounds and permutation invariance", [&] { return measure_identities(resources); }},
      {"syntactic fixture counts", syntactic_fixture},
      {"selection procedure", selection_procedure},
      {"ordinal model correctness", clm_correctness},
      {"compression ordering", koldef_ordering},
      {"end-to-end agreement harness", [&] { return agreement_harness(resources); }},
      {"determinism of CLI outputs", [&] { return determinism(exe); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first
              << " (" << o.detail << ")" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
