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

// speechcx: complexity contours, transcript alignment and agreement
// statistics from the command line.
//
// Shared settings (resources, window, bands, ...) live on the top-level app
// so that a --config file can set them and any flag after the subcommand
// overrides the file. Config keys are the long flag names; underscores and
// dashes are interchangeable.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"  // single-header copy
#endif

#include "speechcx/alignment.hpp"
#include "speechcx/clm.hpp"
#include "speechcx/config.hpp"
#include "speechcx/contour.hpp"
#include "speechcx/error.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/lexres.hpp"
#include "speechcx/registry.hpp"
#include "speechcx/reports.hpp"
#include "speechcx/stats.hpp"
#include "speechcx/transcript.hpp"
#include "speechcx/version.hpp"

namespace fs = std::filesystem;

namespace speechcx {
namespace {

struct Inputs {
  fs::path corpus;
  fs::path registry;
  fs::path ref, hyp, speakers;
  fs::path manual, asr, groups;
  fs::path scores, labels;
};

void emit(const fs::path& dir, const std::string& name, const std::string& content) {
  write_text_file(dir / name, content);
}

ScoreTable coverage_table(const CorpusScores& scored, const MeasureRegistry& registry) {
  ScoreTable t;
  t.row_ids = scored.table.row_ids;
  std::vector<std::size_t> cols;
  for (std::size_t m = 0; m < registry.size(); ++m) {
    if (registry.specs()[m].formula == "prevalence") {
      cols.push_back(m);
      t.columns.push_back(registry.specs()[m].id.name);
    }
  }
  for (const auto& doc : scored.coverage) {
    std::vector<Score> row;
    for (std::size_t m : cols) row.push_back(doc[m]);
    t.values.push_back(std::move(row));
  }
  return t;
}

int cmd_analyze(const RunConfig& cfg, const Inputs& in) {
  if (cfg.resources.empty()) throw ConfigError("analyze needs a resource directory (--resources)");
  const ResourceBundle resources = ResourceBundle::load(cfg.resources);
  const MeasureRegistry registry =
      in.registry.empty() ? default_registry() : MeasureRegistry::load(in.registry);
  registry.check_resources(resources);
  const auto docs = load_corpus(in.corpus);

  const CorpusScores scored =
      score_corpus(docs, cfg.contour(), registry, resources, cfg.scoring(), cfg.threads);

  ensure_directory(cfg.output);
  write_score_table(scored.table, cfg.output / "scores.csv");
  write_contours(scored.contours, cfg.output / "contours.csv");
  write_score_table(coverage_table(scored, registry), cfg.output / "coverage.csv");
  emit(cfg.output, "documents.csv", documents_csv(docs));
  emit(cfg.output, "scores.meta.json", run_metadata_json(cfg, registry, docs.size()));
  return 0;
}

WordClassifier classifier_for(const RunConfig& cfg) {
  if (cfg.hesitations.empty()) return WordClassifier();
  return WordClassifier(WordClassifier::load_word_list(cfg.hesitations), WordClassifier().function_words());
}

int cmd_wer(const RunConfig& cfg, const Inputs& in) {
  const auto ref = read_transcripts(in.ref);
  const auto hyp = read_transcripts(in.hyp);
  const auto speakers = in.speakers.empty() ? std::map<std::string, SpeakerInfo>{}
                                            : read_speaker_map(in.speakers);
  WerOptions opts;
  opts.filter_hesitations = cfg.filter_hesitations;
  const std::string report = wer_report_json(ref, hyp, speakers, classifier_for(cfg), opts, cfg.threads);
  ensure_directory(cfg.output);
  emit(cfg.output, "wer.json", report);
  return 0;
}

void write_agreement(const RunConfig& cfg, const Inputs& in) {
  const ScoreTable manual = read_score_table(in.manual);
  const ScoreTable asr = read_score_table(in.asr);
  const auto groups = in.groups.empty() ? std::map<std::string, std::string>{}
                                        : read_document_groups(in.groups);
  const AgreementReport report = agreement_analysis(manual, asr, groups, cfg.bands());
  ensure_directory(cfg.output);
  emit(cfg.output, "agreement.json", agreement_json(report, manual, asr));
  emit(cfg.output, "agreement_long.csv", agreement_long_csv(report));
  emit(cfg.output, "agreement_table.csv", agreement_table_csv(report, manual, asr));
}

void write_ranking(const RunConfig& cfg, const fs::path& scores, const fs::path& labels) {
  const ScoreTable table = read_score_table(scores);
  const FeatureRanking ranking = rank_features(table, read_labels(labels));
  for (const auto& s : ranking.skipped) {
    std::cerr << "warning: skipped " << s.measure << ": " << s.reason << "\n";
  }
  for (const auto& r : ranking.ranked) {
    if (r.separated) {
      std::cerr << "warning: " << r.measure << " separates the outcome classes; beta is capped\n";
    } else if (!r.converged) {
      std::cerr << "warning: fit for " << r.measure << " did not converge\n";
    }
  }
  ensure_directory(cfg.output);
  emit(cfg.output, "ranking.csv", ranking_csv(ranking));
  emit(cfg.output, "ranking.json", ranking_json(ranking));
}

int cmd_agree(const RunConfig& cfg, const Inputs& in) {
  write_agreement(cfg, in);
  return 0;
}

int cmd_select(const RunConfig& cfg, const Inputs& in) {
  const ScoreTable table = read_score_table(in.scores);
  const SelectionOptions opts = cfg.selection();
  const SelectionResult result = select_measures(table, opts);
  ensure_directory(cfg.output);
  emit(cfg.output, "selection.json", selection_json(result, opts));
  return 0;
}

int cmd_rank(const RunConfig& cfg, const Inputs& in) {
  write_ranking(cfg, in.scores, in.labels);
  return 0;
}

// Agreement plus a ranking of the manual scores, in one directory.
int cmd_report(const RunConfig& cfg, const Inputs& in) {
  write_agreement(cfg, in);
  write_ranking(cfg, in.manual, in.labels);
  emit(cfg.output, "report.meta.json", run_metadata_json(cfg, default_registry(), 0));
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Linguistic complexity contours and ASR agreement analysis", "speechcx"};
  app.set_version_flag("--version", version_banner());
  app.set_config("--config", "", "Key=value settings file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig cfg;
  Inputs in;
  app.add_option("--resources", cfg.resources, "Resource directory containing manifest.tsv");
  app.add_option("--ws", cfg.ws, "Window size in sentences (default 5)");
  app.add_option("--step", cfg.step, "Window stride in sentences (default 1)");
  app.add_option("--aggregate", cfg.aggregate, "Contour aggregate: mean | median (default mean)");
  app.add_option("--np-norm,--np_norm", cfg.np_norm, "NP modifier denominator: per-np | per-sentence");
  app.add_option("--deflate-level,--deflate_level", cfg.deflate_level, "zlib level for KolDef, 1..9 (default 5)");
  app.add_option("--r-threshold,--r_threshold", cfg.r_threshold, "Correlation cut-off for selection (default 0.9)");
  app.add_option("--band-strong,--band_strong", cfg.band_strong, "rho above this is strong (default 0.7)");
  app.add_option("--band-moderate,--band_moderate", cfg.band_moderate, "rho above this is moderate (default 0.6)");
  app.add_option("--hesitations", cfg.hesitations, "Hesitation lexicon, one word per line");
  app.add_flag("--filter-hesitations,--filter_hesitations", cfg.filter_hesitations, "Drop hesitations before alignment");
  app.add_option("-o,--output", cfg.output, "Output directory (default .)");
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = all cores");

  auto* analyze = app.add_subcommand("analyze", "Score a corpus: scores, contours, coverage");
  analyze->add_option("--corpus", in.corpus, "JSON-Lines corpus")->required();
  analyze->add_option("--registry", in.registry, "Measure registry TSV (default built-in)");

  auto* wer = app.add_subcommand("wer", "Align reference and hypothesis transcripts");
  wer->add_option("--ref", in.ref, "Reference transcripts")->required();
  wer->add_option("--hyp", in.hyp, "Hypothesis transcripts")->required();
  wer->add_option("--speakers", in.speakers, "doc_id<TAB>speaker<TAB>subgroup map");

  auto* agree = app.add_subcommand("agree", "Spearman agreement between two score tables");
  agree->add_option("--manual", in.manual, "Scores from manual transcripts")->required();
  agree->add_option("--asr", in.asr, "Scores from ASR transcripts")->required();
  agree->add_option("--groups", in.groups, "documents.csv giving each document's subgroup");

  auto* select = app.add_subcommand("select", "Near-zero-variance and correlation filtering");
  select->add_option("--scores", in.scores, "Score table")->required();

  auto* rank = app.add_subcommand("rank", "Rank measures by ordinal-model feature importance");
  rank->add_option("--scores", in.scores, "Score table")->required();
  rank->add_option("--labels", in.labels, "doc_id,label CSV")->required();

  auto* report = app.add_subcommand("report", "Agreement and ranking in one directory");
  report->add_option("--manual", in.manual, "Scores from manual transcripts")->required();
  report->add_option("--asr", in.asr, "Scores from ASR transcripts")->required();
  report->add_option("--labels", in.labels, "doc_id,label CSV")->required();
  report->add_option("--groups", in.groups, "documents.csv giving each document's subgroup");

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    std::cerr << "speechcx: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cfg.validate();
  if (analyze->parsed()) return cmd_analyze(cfg, in);
  if (wer->parsed()) return cmd_wer(cfg, in);
  if (agree->parsed()) return cmd_agree(cfg, in);
  if (select->parsed()) return cmd_select(cfg, in);
  if (rank->parsed()) return cmd_rank(cfg, in);
  return cmd_report(cfg, in);
}

}  // namespace
}  // namespace speechcx

int main(int argc, char** argv) {
  try {
    return speechcx::run(argc, argv);
  } catch (const speechcx::IoError& e) {
    std::cerr << "speechcx: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "speechcx: " << e.what() << "\n";
    return 1;
  }
}
