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

#include "speechcx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "speechcx/error.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

ScoreTable parse_score_table(std::string_view csv, std::string_view source) {
  ScoreTable t;
  std::size_t line_no = 0;
  bool header = true;
  for (std::string_view line : split(csv, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    std::vector<std::string> fields;
    try {
      fields = parse_csv_line(line);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    if (header) {
      if (fields.empty() || fields[0] != "doc_id") {
        throw ValidationError(where + ": header must start with 'doc_id'");
      }
      t.columns.assign(fields.begin() + 1, fields.end());
      header = false;
      continue;
    }
    if (fields.size() != t.columns.size() + 1) {
      throw ValidationError(where + ": expected " + std::to_string(t.columns.size() + 1) +
                            " fields, got " + std::to_string(fields.size()));
    }
    t.row_ids.push_back(fields[0]);
    std::vector<Score> row;
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (trim(fields[k]).empty()) {
        row.emplace_back(std::nullopt);
        continue;
      }
      double v = 0;
      if (!parse_double(fields[k], v)) {
        throw ValidationError(where + ": '" + fields[k] + "' is not a number");
      }
      row.emplace_back(v);
    }
    t.values.push_back(std::move(row));
  }
  if (header) throw ValidationError(std::string(source) + ": missing header line");
  std::set<std::string_view> ids;
  for (const auto& id : t.row_ids) {
    if (!ids.insert(id).second) {
      throw ValidationError(std::string(source) + ": duplicate doc_id '" + id + "'");
    }
  }
  t.validate();
  return t;
}

ScoreTable read_score_table(const std::filesystem::path& path) {
  return parse_score_table(read_text_file(path), path.string());
}

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1.
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("correlation: vectors differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("correlation: need at least 2 pairs");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) throw DomainError("correlation: constant vector");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("spearman: vectors differ in length");
  if (x.size() < 3) throw DomainError("spearman: need at least 3 pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

void complete_pairs(std::span<const Score> x, std::span<const Score> y, std::vector<double>& xo,
                    std::vector<double>& yo) {
  if (x.size() != y.size()) throw DomainError("vectors differ in length");
  xo.clear();
  yo.clear();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) {
      xo.push_back(*x[i]);
      yo.push_back(*y[i]);
    }
  }
}

double spearman(std::span<const Score> x, std::span<const Score> y) {
  std::vector<double> a;
  std::vector<double> b;
  complete_pairs(x, y, a, b);
  return spearman(std::span<const double>(a), std::span<const double>(b));
}

namespace {

Score try_spearman(std::span<const Score> x, std::span<const Score> y) {
  try {
    return spearman(x, y);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

struct MeanSd {
  Score mean;
  Score sd;
};

MeanSd mean_sd(const std::vector<double>& v) {
  MeanSd out;
  if (v.empty()) return out;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  out.mean = m;
  if (v.size() > 1) {
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    out.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return out;
}

}  // namespace

AgreementReport agreement_analysis(const ScoreTable& manual, const ScoreTable& asr,
                                   const std::map<std::string, std::string>& subgroups,
                                   AgreementBands bands) {
  manual.validate();
  asr.validate();
  if (bands.moderate > bands.strong) {
    throw ConfigError("moderate band threshold exceeds the strong threshold");
  }
  if (std::set<std::string>(manual.row_ids.begin(), manual.row_ids.end()) !=
      std::set<std::string>(asr.row_ids.begin(), asr.row_ids.end())) {
    throw ValidationError("manual and ASR score tables have different document ids");
  }
  if (std::set<std::string>(manual.columns.begin(), manual.columns.end()) !=
      std::set<std::string>(asr.columns.begin(), asr.columns.end())) {
    throw ValidationError("manual and ASR score tables have different measure columns");
  }

  // ASR row index for every manual row.
  std::vector<std::size_t> asr_row(manual.row_ids.size());
  for (std::size_t i = 0; i < manual.row_ids.size(); ++i) {
    asr_row[i] = *asr.row_index(manual.row_ids[i]);
  }
  std::set<std::string> groups;
  for (const auto& id : manual.row_ids) {
    if (auto it = subgroups.find(id); it != subgroups.end()) groups.insert(it->second);
  }

  AgreementReport rep;
  std::vector<double> defined;
  for (std::size_t j = 0; j < manual.columns.size(); ++j) {
    const std::string& name = manual.columns[j];
    const std::size_t aj = *asr.column_index(name);
    std::vector<Score> x;
    std::vector<Score> y;
    for (std::size_t i = 0; i < manual.row_ids.size(); ++i) {
      x.push_back(manual.values[i][j]);
      y.push_back(asr.values[asr_row[i]][aj]);
    }
    CorrelationResult res;
    res.measure = name;
    for (std::size_t i = 0; i < x.size(); ++i) res.n_pairs += (x[i] && y[i]) ? 1 : 0;
    res.rho_overall = try_spearman(x, y);
    for (const std::string& g : groups) {
      std::vector<Score> gx;
      std::vector<Score> gy;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const auto it = subgroups.find(manual.row_ids[i]);
        if (it != subgroups.end() && it->second == g) {
          gx.push_back(x[i]);
          gy.push_back(y[i]);
        }
      }
      res.rho_by_subgroup[g] = try_spearman(gx, gy);
    }
    if (res.rho_overall) {
      const double r = *res.rho_overall;
      defined.push_back(r);
      if (r > bands.strong) {
        ++rep.summary.strong;
      } else if (r > bands.moderate) {
        ++rep.summary.moderate;
      } else {
        ++rep.summary.weak;
      }
    }
    rep.results.push_back(std::move(res));
  }
  rep.summary.measures = rep.results.size();
  rep.summary.defined = defined.size();
  const MeanSd ms = mean_sd(defined);
  rep.summary.mean_rho = ms.mean;
  rep.summary.sd_rho = ms.sd;
  rep.summary.bands = bands;
  return rep;
}

std::vector<DescriptiveStats> descriptive(const ScoreTable& table) {
  table.validate();
  std::vector<DescriptiveStats> out;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    std::vector<double> v;
    for (const auto& row : table.values) {
      if (row[j]) v.push_back(*row[j]);
    }
    const MeanSd ms = mean_sd(v);
    out.push_back({table.columns[j], v.size(), ms.mean, ms.sd});
  }
  return out;
}

bool near_zero_variance(std::span<const Score> column, const SelectionOptions& options) {
  std::vector<double> v;
  for (const Score& s : column) {
    if (s) v.push_back(*s);
  }
  if (v.size() < 2) return true;
  const MeanSd ms = mean_sd(v);
  if (*ms.sd * *ms.sd < options.min_variance) return true;

  std::map<double, std::size_t> freq;
  for (double x : v) ++freq[x];
  std::vector<std::size_t> counts;
  for (const auto& [value, c] : freq) counts.push_back(c);
  std::sort(counts.rbegin(), counts.rend());
  const double freq_ratio = counts.size() > 1 ? static_cast<double>(counts[0]) / counts[1]
                                              : std::numeric_limits<double>::infinity();
  const double unique_pct = 100.0 * static_cast<double>(freq.size()) / static_cast<double>(v.size());
  return freq_ratio > options.nzv_freq_ratio && unique_pct < options.nzv_unique_percent;
}

std::vector<std::vector<double>> correlation_matrix(const ScoreTable& table) {
  const std::size_t k = table.columns.size();
  std::vector<std::vector<double>> corr(k, std::vector<double>(k, 0.0));
  std::vector<std::vector<Score>> cols;
  for (std::size_t j = 0; j < k; ++j) cols.push_back(table.column(j));
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t p = 0; p < k; ++p) {
    corr[p][p] = 1.0;
    for (std::size_t q = p + 1; q < k; ++q) {
      complete_pairs(cols[p], cols[q], a, b);
      double r = 0;
      try {
        r = pearson(a, b);
      } catch (const DomainError&) {
        r = 0;
      }
      corr[p][q] = corr[q][p] = r;
    }
  }
  return corr;
}

std::vector<std::size_t> correlation_filter(const std::vector<std::vector<double>>& corr,
                                            double threshold) {
  const std::size_t k = corr.size();
  std::vector<bool> alive(k, true);
  std::vector<std::size_t> removed;
  while (true) {
    double best = threshold;
    std::size_t bp = k;
    std::size_t bq = k;
    for (std::size_t p = 0; p < k; ++p) {
      if (!alive[p]) continue;
      for (std::size_t q = p + 1; q < k; ++q) {
        if (alive[q] && std::abs(corr[p][q]) > best) {
          best = std::abs(corr[p][q]);
          bp = p;
          bq = q;
        }
      }
    }
    if (bp == k) return removed;
    auto mean_abs = [&](std::size_t c) {
      double sum = 0;
      std::size_t n = 0;
      for (std::size_t o = 0; o < k; ++o) {
        if (o != c && alive[o]) {
          sum += std::abs(corr[c][o]);
          ++n;
        }
      }
      return n ? sum / static_cast<double>(n) : 0.0;
    };
    const std::size_t drop = mean_abs(bq) > mean_abs(bp) ? bq : bp;
    alive[drop] = false;
    removed.push_back(drop);
  }
}

SelectionResult select_measures(const ScoreTable& table, const SelectionOptions& options) {
  table.validate();
  if (table.columns.size() < 2) throw ValidationError("selection needs at least 2 columns");
  if (table.row_ids.size() < 3) throw ValidationError("selection needs at least 3 rows");

  SelectionResult out;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    const auto col = table.column(j);
    if (near_zero_variance(col, options)) {
      out.removed_nzv.push_back(table.columns[j]);
    } else {
      kept.push_back(j);
    }
  }

  ScoreTable sub;
  sub.row_ids = table.row_ids;
  for (std::size_t j : kept) sub.columns.push_back(table.columns[j]);
  for (const auto& row : table.values) {
    std::vector<Score> r;
    for (std::size_t j : kept) r.push_back(row[j]);
    sub.values.push_back(std::move(r));
  }

  const auto removed = correlation_filter(correlation_matrix(sub), options.r_threshold);
  std::set<std::size_t> gone(removed.begin(), removed.end());
  for (std::size_t idx : removed) out.removed_corr.push_back(sub.columns[idx]);
  for (std::size_t idx = 0; idx < sub.columns.size(); ++idx) {
    if (!gone.count(idx)) out.retained.push_back(sub.columns[idx]);
  }
  if (out.retained.empty()) throw DomainError("measure selection removed every column");
  return out;
}

}  // namespace speechcx
