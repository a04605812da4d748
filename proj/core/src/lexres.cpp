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

#include "speechcx/lexres.hpp"

#include <cctype>
#include <fstream>

#include "speechcx/error.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

namespace {

bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      return false;
  }
}

struct TsvRow {
  std::size_t line;
  std::vector<std::string> fields;
};

// Reads a tab-separated file, skipping blank and '#' lines; every row must
// have exactly `width` fields.
std::vector<TsvRow> read_tsv(const std::filesystem::path& path, std::size_t width) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open resource file '" + path.string() + "'");
  std::vector<TsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto parts = split(line, '\t');
    if (parts.size() != width) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(width) + " tab-separated fields, got " +
                            std::to_string(parts.size()));
    }
    TsvRow row{line_no, {}};
    for (auto p : parts) row.fields.emplace_back(trim(p));
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void bad_row(const std::filesystem::path& path, std::size_t line,
                          const std::string& what) {
  throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + what);
}

template <typename Map>
auto* find_in(const Map& m, std::string_view word) {
  const auto it = m.find(to_lower(word));
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

std::optional<std::int64_t> FrequencyList::rank(std::string_view word) const {
  if (const auto* r = find_in(ranks, word)) return *r;
  return std::nullopt;
}

bool FrequencyList::is_sophisticated(std::string_view word) const {
  const auto r = rank(word);
  return !r || *r > cutoff;
}

std::optional<double> PrevalenceTable::score(std::string_view word) const {
  if (const auto* v = find_in(values, word)) return *v;
  return std::nullopt;
}

std::string_view register_name(Register r) {
  switch (r) {
    case Register::kSpoken: return "spoken";
    case Register::kMagazine: return "magazine";
    case Register::kFiction: return "fiction";
    case Register::kNews: return "news";
    case Register::kAcademic: return "academic";
  }
  return "spoken";
}

Register parse_register(std::string_view name) {
  for (Register r : {Register::kSpoken, Register::kMagazine, Register::kFiction, Register::kNews,
                     Register::kAcademic}) {
    if (register_name(r) == name) return r;
  }
  throw ConfigError("unknown register '" + std::string(name) + "'");
}

std::string normalize_gram(std::string_view gram) {
  std::vector<std::string> parts;
  for (auto p : split_whitespace(gram)) parts.push_back(to_lower(p));
  return join(parts, " ");
}

bool NgramTable::contains(std::string_view gram) const {
  return grams.find(normalize_gram(gram)) != grams.end();
}

SyllableCounter::SyllableCounter(std::unordered_map<std::string, int> exceptions) {
  for (auto& [word, count] : exceptions) exceptions_[to_lower(word)] = count;
}

int SyllableCounter::count(std::string_view word) const {
  if (const auto* c = find_in(exceptions_, word)) return *c;
  return syllables(word);
}

int syllables(std::string_view word) {
  if (word.empty()) throw DomainError("syllables: empty word");
  for (char c : word) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw DomainError("syllables: non-alphabetic word '" + std::string(word) + "'");
    }
  }
  const std::string w = to_lower(word);
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const std::size_t n = w.size();
  if (groups > 1 && n >= 2 && w[n - 1] == 'e' && !is_vowel(w[n - 2])) --groups;
  return groups < 1 ? 1 : groups;
}

FrequencyList load_frequency_list(const std::filesystem::path& path, std::string name,
                                  std::int64_t cutoff) {
  if (cutoff < 1) throw ConfigError("frequency list '" + name + "': cutoff must be >= 1");
  FrequencyList list{std::move(name), {}, cutoff};
  for (const TsvRow& row : read_tsv(path, 2)) {
    long long rank = 0;
    if (!parse_int(row.fields[1], rank) || rank < 1) {
      bad_row(path, row.line, "rank must be a positive integer");
    }
    std::string word = to_lower(row.fields[0]);
    if (word.empty()) bad_row(path, row.line, "empty word");
    if (!list.ranks.emplace(word, rank).second) {
      bad_row(path, row.line, "duplicate word '" + word + "'");
    }
  }
  return list;
}

PrevalenceTable load_prevalence_table(const std::filesystem::path& path, std::string name) {
  PrevalenceTable table{std::move(name), {}};
  for (const TsvRow& row : read_tsv(path, 2)) {
    double v = 0;
    if (!parse_double(row.fields[1], v)) bad_row(path, row.line, "score must be a finite number");
    std::string word = to_lower(row.fields[0]);
    if (word.empty()) bad_row(path, row.line, "empty word");
    if (!table.values.emplace(word, v).second) {
      bad_row(path, row.line, "duplicate word '" + word + "'");
    }
  }
  return table;
}

NgramTable load_ngram_table(const std::filesystem::path& path, std::string name, Register reg,
                            int n) {
  if (n < 1) throw ConfigError("n-gram table '" + name + "': order must be >= 1");
  NgramTable table{std::move(name), reg, n, {}};
  for (const TsvRow& row : read_tsv(path, 2)) {
    const auto items = split_whitespace(row.fields[0]);
    if (static_cast<int>(items.size()) != n) {
      bad_row(path, row.line, "gram '" + row.fields[0] + "' has " + std::to_string(items.size()) +
                                  " items, need " + std::to_string(n));
    }
    double freq = 0;
    if (!parse_double(row.fields[1], freq)) bad_row(path, row.line, "frequency must be a number");
    table.grams[normalize_gram(row.fields[0])] = freq;
  }
  return table;
}

SyllableCounter load_syllable_exceptions(const std::filesystem::path& path) {
  std::unordered_map<std::string, int> exceptions;
  for (const TsvRow& row : read_tsv(path, 2)) {
    long long c = 0;
    if (!parse_int(row.fields[1], c) || c < 1) bad_row(path, row.line, "count must be >= 1");
    exceptions[to_lower(row.fields[0])] = static_cast<int>(c);
  }
  return SyllableCounter(std::move(exceptions));
}

ResourceBundle ResourceBundle::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("resource directory '" + dir.string() + "' does not exist");
  }
  const auto manifest = dir / kManifestName;
  if (!std::filesystem::exists(manifest)) {
    throw ConfigError("missing resource manifest '" + manifest.string() + "'");
  }

  struct Entry {
    std::size_t line;
    std::string kind, id, file;
    std::map<std::string, std::string> options;
  };
  std::vector<Entry> entries;
  {
    std::ifstream in(manifest, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + manifest.string() + "'");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const auto parts = split_whitespace(t);
      if (parts.size() < 3) bad_row(manifest, line_no, "expected '<kind> <id> <file> [key=value...]'");
      Entry e{line_no, std::string(parts[0]), std::string(parts[1]), std::string(parts[2]), {}};
      for (std::size_t k = 3; k < parts.size(); ++k) {
        const auto eq = parts[k].find('=');
        if (eq == std::string_view::npos) bad_row(manifest, line_no, "option without '='");
        e.options[std::string(parts[k].substr(0, eq))] = std::string(parts[k].substr(eq + 1));
      }
      entries.push_back(std::move(e));
    }
  }

  std::vector<std::string> missing;
  for (const Entry& e : entries) {
    if (!std::filesystem::exists(dir / e.file)) missing.push_back(e.id + " (" + e.file + ")");
  }
  if (!missing.empty()) {
    throw ConfigError("missing resource file(s) in '" + dir.string() + "': " + join(missing, ", "));
  }

  auto option_int = [&](const Entry& e, const std::string& key) -> std::optional<long long> {
    const auto it = e.options.find(key);
    if (it == e.options.end()) return std::nullopt;
    long long v = 0;
    if (!parse_int(it->second, v)) bad_row(manifest, e.line, "option " + key + " must be an integer");
    return v;
  };

  ResourceBundle bundle;
  for (const Entry& e : entries) {
    if (bundle.has(e.id)) bad_row(manifest, e.line, "duplicate resource id '" + e.id + "'");
    const auto path = dir / e.file;
    if (e.kind == "frequency") {
      bundle.add(load_frequency_list(path, e.id,
                                     option_int(e, "cutoff").value_or(kDefaultSophisticationCutoff)));
    } else if (e.kind == "prevalence") {
      bundle.add(load_prevalence_table(path, e.id));
    } else if (e.kind == "ngram") {
      const auto reg = e.options.find("register");
      const auto n = option_int(e, "n");
      if (reg == e.options.end() || !n) {
        bad_row(manifest, e.line, "ngram resource needs register=<name> and n=<order>");
      }
      bundle.add(load_ngram_table(path, e.id, parse_register(reg->second), static_cast<int>(*n)));
    } else if (e.kind == "syllables") {
      bundle.set_syllables(load_syllable_exceptions(path));
    } else {
      bad_row(manifest, e.line, "unknown resource kind '" + e.kind + "'");
    }
  }
  return bundle;
}

void ResourceBundle::add(FrequencyList list) {
  const std::string id = list.name;
  frequency_.insert_or_assign(id, std::move(list));
}

void ResourceBundle::add(PrevalenceTable table) {
  const std::string id = table.name;
  prevalence_.insert_or_assign(id, std::move(table));
}

void ResourceBundle::add(NgramTable table) {
  const std::string id = table.name;
  ngram_.insert_or_assign(id, std::move(table));
}

const FrequencyList& ResourceBundle::frequency(std::string_view id) const {
  const auto it = frequency_.find(id);
  if (it == frequency_.end()) throw ConfigError("frequency list '" + std::string(id) + "' not loaded");
  return it->second;
}

const PrevalenceTable& ResourceBundle::prevalence(std::string_view id) const {
  const auto it = prevalence_.find(id);
  if (it == prevalence_.end()) {
    throw ConfigError("prevalence table '" + std::string(id) + "' not loaded");
  }
  return it->second;
}

const NgramTable& ResourceBundle::ngram(std::string_view id) const {
  const auto it = ngram_.find(id);
  if (it == ngram_.end()) throw ConfigError("n-gram table '" + std::string(id) + "' not loaded");
  return it->second;
}

bool ResourceBundle::has(std::string_view id) const {
  return frequency_.count(id) || prevalence_.count(id) || ngram_.count(id);
}

std::size_t ResourceBundle::size() const {
  return frequency_.size() + prevalence_.size() + ngram_.size();
}

std::vector<std::string> ResourceBundle::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : frequency_) out.push_back(k);
  for (const auto& [k, v] : prevalence_) out.push_back(k);
  for (const auto& [k, v] : ngram_) out.push_back(k);
  return out;
}

}  // namespace speechcx
