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

#ifndef SPEECHCX_STATS_HPP_
#define SPEECHCX_STATS_HPP_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "speechcx/transcript.hpp"

namespace speechcx {

// Reads the CSV written by write_score_table. Empty fields become missing.
// Throws IoError / ValidationError (with line numbers).
ScoreTable read_score_table(const std::filesystem::path& path);
ScoreTable parse_score_table(std::string_view csv, std::string_view source = "<string>");

// Average (fractional) ranks starting at 1; ties share their mean rank.
std::vector<double> average_ranks(std::span<const double> x);

// Pearson r. Throws DomainError when lengths differ, n < 2, or either
// vector is constant.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rho: Pearson correlation of average ranks. Requires n >= 3 and
// non-constant inputs; throws DomainError otherwise.
double spearman(std::span<const double> x, std::span<const double> y);

// Same, after pairwise deletion of missing values.
double spearman(std::span<const Score> x, std::span<const Score> y);

// Pairs where both sides are present.
void complete_pairs(std::span<const Score> x, std::span<const Score> y, std::vector<double>& xo,
                    std::vector<double>& yo);

// ---- agreement ---------------------------------------------------------

struct CorrelationResult {
  std::string measure;
  Score rho_overall;  // missing when undefined (constant or < 3 pairs)
  std::map<std::string, Score> rho_by_subgroup;
  std::size_t n_pairs = 0;
};

struct AgreementBands {
  double strong = 0.7;
  double moderate = 0.6;
};

struct AgreementSummary {
  std::size_t measures = 0;
  std::size_t defined = 0;
  Score mean_rho;
  Score sd_rho;       // sample SD over defined rho
  std::size_t strong = 0;    // rho > bands.strong
  std::size_t moderate = 0;  // bands.moderate < rho <= bands.strong
  std::size_t weak = 0;      // rho <= bands.moderate
  AgreementBands bands;
};

struct AgreementReport {
  std::vector<CorrelationResult> results;  // manual table column order
  AgreementSummary summary;
};

// subgroups maps row id -> subgroup label; rows without a label only enter
// the overall correlation. Throws ValidationError when the tables do not
// share row ids and columns.
AgreementReport agreement_analysis(const ScoreTable& manual, const ScoreTable& asr,
                                   const std::map<std::string, std::string>& subgroups = {},
                                   AgreementBands bands = {});

// ---- descriptive -------------------------------------------------------

struct DescriptiveStats {
  std::string measure;
  std::size_t n = 0;
  Score mean;
  Score sd;  // sample SD; missing for n < 2
};

std::vector<DescriptiveStats> descriptive(const ScoreTable& table);

// ---- selection ---------------------------------------------------------

struct SelectionOptions {
  double r_threshold = 0.9;
  double nzv_freq_ratio = 19.0;       // most / second most frequent value
  double nzv_unique_percent = 10.0;   // distinct values as % of non-missing
  double min_variance = 1e-12;
};

struct SelectionResult {
  std::vector<std::string> removed_nzv;
  std::vector<std::string> removed_corr;  // in removal order
  std::vector<std::string> retained;      // input column order
};

// Near-zero-variance test on the non-missing values of one column.
bool near_zero_variance(std::span<const Score> column, const SelectionOptions& options = {});

// Pearson correlation matrix with pairwise deletion; undefined entries are 0.
std::vector<std::vector<double>> correlation_matrix(const ScoreTable& table);

// Redundancy filter on a correlation matrix: while some pair has
// |r| > threshold, take the pair with the largest |r| and drop the member
// whose mean |r| against the other remaining columns is larger (the first
// member on an exact tie). Returns the indices removed, in order.
std::vector<std::size_t> correlation_filter(const std::vector<std::vector<double>>& corr,
                                            double threshold);

// Throws ValidationError for < 2 columns or < 3 rows and DomainError when
// no column survives.
SelectionResult select_measures(const ScoreTable& table, const SelectionOptions& options = {});

}  // namespace speechcx

#endif  // SPEECHCX_STATS_HPP_
