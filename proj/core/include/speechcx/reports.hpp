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

#ifndef SPEECHCX_REPORTS_HPP_
#define SPEECHCX_REPORTS_HPP_

// Plot-ready renderings of the analysis results. All writers are
// byte-deterministic for equal inputs.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "speechcx/clm.hpp"
#include "speechcx/config.hpp"
#include "speechcx/registry.hpp"
#include "speechcx/stats.hpp"
#include "speechcx/transcript.hpp"

namespace speechcx {

// "doc_id,speaker_id,subgroup", one row per document.
std::string documents_csv(const std::vector<Document>& docs);

// doc_id -> subgroup from a documents CSV as written above.
std::map<std::string, std::string> read_document_groups(const std::filesystem::path& path);

// Summary, per-measure rho (overall and per subgroup) and manual/ASR M and SD.
std::string agreement_json(const AgreementReport& report, const ScoreTable& manual,
                           const ScoreTable& asr);

// Long format "measure,subgroup,rho"; subgroup "overall" holds the pooled value.
std::string agreement_long_csv(const AgreementReport& report);

// "measure,manual_m,manual_sd,asr_m,asr_sd,rho", one row per measure.
std::string agreement_table_csv(const AgreementReport& report, const ScoreTable& manual,
                                const ScoreTable& asr);

// "measure,fi,beta,converged,separated,n,above_mean" in ranking order.
std::string ranking_csv(const FeatureRanking& ranking);
std::string ranking_json(const FeatureRanking& ranking);

std::string selection_json(const SelectionResult& result, const SelectionOptions& options);

// Version banner, registry and pattern-set versions, measure list and the
// resolved run configuration.
std::string run_metadata_json(const RunConfig& config, const MeasureRegistry& registry,
                              std::size_t documents);

}  // namespace speechcx

#endif  // SPEECHCX_REPORTS_HPP_
