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

#ifndef SPEECHCX_CLM_HPP_
#define SPEECHCX_CLM_HPP_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "speechcx/transcript.hpp"

namespace speechcx {

// Fixed-effects proportional-odds model on one standardized predictor:
//
//   P(Y <= j | x) = logistic(theta_j - beta * z),   z = (x - mean) / sd
//
// Thresholds are kept ordered by fitting theta_1 and log-increments
// log(theta_j - theta_{j-1}).
struct ClmOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;  // max-norm of the likelihood gradient
  double beta_cap = 30.0;            // |beta| bound under separation
  bool fix_beta_zero = false;        // intercept-only model
};

struct ClmFit {
  std::vector<int> levels;          // distinct labels, ascending; class j = levels[j]
  std::vector<double> thresholds;   // theta_1 < ... < theta_{J-1}
  double beta = 0;                  // slope on the standardized predictor
  double loglik = 0;
  bool converged = false;
  bool separated = false;           // |beta| hit the cap
  int iterations = 0;
  double fi = 0;                    // sum of |theta_j|
  std::vector<double> loglik_trace;  // after each accepted step, starting value first
};

// Throws ValidationError unless x and y have equal length and y has at least
// two distinct labels; DomainError when x is constant.
ClmFit fit_clm(std::span<const double> x, std::span<const int> y, const ClmOptions& options = {});

double clm_loglik(std::span<const double> z, std::span<const int> classes,
                  std::span<const double> thresholds, double beta);

struct RankedMeasure {
  std::string measure;
  double fi = 0;
  double beta = 0;
  bool converged = false;
  bool separated = false;
  std::size_t n = 0;
  bool above_mean = false;
};

struct SkippedMeasure {
  std::string measure;
  std::string reason;
};

struct FeatureRanking {
  std::vector<RankedMeasure> ranked;  // descending fi, then name
  double mean_fi = 0;                 // cutoff line over ranked measures
  std::vector<SkippedMeasure> skipped;
};

// One fit per measure on complete-case rows (rows with both a score and a
// label). Measures with fewer than J + 2 such rows, a single class, or a
// constant score are skipped with a reason.
FeatureRanking rank_features(const ScoreTable& table, const std::map<std::string, int>& labels,
                             const ClmOptions& options = {});

// "doc_id,label" CSV with a header row. Throws IoError / ValidationError.
std::map<std::string, int> read_labels(const std::filesystem::path& path);

}  // namespace speechcx

#endif  // SPEECHCX_CLM_HPP_
