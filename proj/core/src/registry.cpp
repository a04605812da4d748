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

#include "speechcx/registry.hpp"

#include <algorithm>
#include <set>

#include "measure_registry_data.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/lexres.hpp"
#include "speechcx/syntactic.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

namespace {

Category parse_category(std::string_view s, const std::string& where) {
  if (s == "syntactic") return Category::kSyntactic;
  if (s == "lexical") return Category::kLexical;
  if (s == "ngram") return Category::kNgram;
  if (s == "information") return Category::kInformation;
  throw RegistryError(where + ": unknown category '" + std::string(s) + "'");
}

bool known_counter(std::string_view name) {
  return SyntacticCounts{}.get(name).has_value();
}

// Returns the number of resources the formula needs.
std::size_t check_formula(const MeasureSpec& spec, const std::string& where) {
  const std::string& f = spec.formula;
  auto bad = [&](const std::string& why) -> std::size_t {
    throw RegistryError(where + ": formula '" + f + "' " + why);
  };
  switch (spec.id.category) {
    case Category::kSyntactic:
      if (f.rfind("ratio:", 0) == 0) {
        const auto parts = split(std::string_view(f).substr(6), '/');
        if (parts.size() != 2 || !known_counter(parts[0]) || !known_counter(parts[1])) {
          return bad("needs two known counters");
        }
        return 0;
      }
      if (f.rfind("npmod:", 0) == 0) {
        if (!known_counter(std::string_view(f).substr(6))) return bad("names an unknown counter");
        return 0;
      }
      return bad("is not a syntactic formula");
    case Category::kLexical:
      if (f == "ttr" || f == "cttr" || f == "lexical_density" || f == "mean_word_chars" ||
          f == "mean_word_syllables") {
        return 0;
      }
      if (f == "sophistication" || f == "prevalence") return 1;
      return bad("is not a lexical formula");
    case Category::kNgram:
      if (f == "coverage") return 1;
      return bad("is not an n-gram formula");
    case Category::kInformation:
      if (f == "deflate_ratio") return 0;
      return bad("is not an information-theoretic formula");
  }
  return 0;
}

}  // namespace

std::string_view category_name(Category c) {
  switch (c) {
    case Category::kSyntactic: return "syntactic";
    case Category::kLexical: return "lexical";
    case Category::kNgram: return "ngram";
    case Category::kInformation: return "information";
  }
  return "syntactic";
}

MeasureRegistry MeasureRegistry::parse(std::string_view text) {
  MeasureRegistry reg;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "registry line " + std::to_string(line_no);
    const auto fields = split_whitespace(line);
    if (fields[0] == "%version") {
      if (fields.size() != 2) throw RegistryError(where + ": expected '%version <id>'");
      reg.version_ = std::string(fields[1]);
      continue;
    }
    if (fields.size() != 4) {
      throw RegistryError(where + ": expected '<name> <category> <formula> <resources>'");
    }
    MeasureSpec spec;
    spec.id.name = std::string(fields[0]);
    spec.id.category = parse_category(fields[1], where);
    spec.formula = std::string(fields[2]);
    if (fields[3] != "-") {
      for (auto r : split(fields[3], ',')) {
        if (r.empty()) throw RegistryError(where + ": empty resource id");
        spec.resources.emplace_back(r);
      }
    }
    const std::size_t need = check_formula(spec, where);
    if (spec.resources.size() != need) {
      throw RegistryError(where + ": formula '" + spec.formula + "' takes " + std::to_string(need) +
                          " resource id(s)");
    }
    if (!seen.insert(spec.id.name).second) {
      throw RegistryError(where + ": duplicate measure '" + spec.id.name + "'");
    }
    reg.specs_.push_back(std::move(spec));
  }
  if (reg.version_.empty()) throw RegistryError("registry has no %version line");
  return reg;
}

MeasureRegistry MeasureRegistry::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

std::vector<std::string> MeasureRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& s : specs_) out.push_back(s.id.name);
  return out;
}

const MeasureSpec* MeasureRegistry::find(std::string_view name) const {
  const auto it = std::find_if(specs_.begin(), specs_.end(),
                               [&](const MeasureSpec& s) { return s.id.name == name; });
  return it == specs_.end() ? nullptr : &*it;
}

const MeasureSpec& MeasureRegistry::at(std::string_view name) const {
  if (const MeasureSpec* s = find(name)) return *s;
  throw RegistryError("unknown measure '" + std::string(name) + "'");
}

MeasureRegistry MeasureRegistry::restrict_to(const std::vector<std::string>& names) const {
  MeasureRegistry out;
  out.version_ = version_;
  for (const std::string& n : names) out.specs_.push_back(at(n));
  return out;
}

void MeasureRegistry::check_resources(const ResourceBundle& resources) const {
  for (const MeasureSpec& s : specs_) {
    for (const std::string& r : s.resources) {
      if (!resources.has(r)) {
        throw ConfigError("measure '" + s.id.name + "' needs resource '" + r +
                          "', which is not loaded");
      }
      // Kind check: the accessors throw when the id names another kind.
      if (s.formula == "sophistication") {
        resources.frequency(r);
      } else if (s.formula == "prevalence") {
        resources.prevalence(r);
      } else if (s.formula == "coverage") {
        resources.ngram(r);
      }
    }
  }
}

std::size_t MeasureRegistry::count(Category c) const {
  return static_cast<std::size_t>(std::count_if(
      specs_.begin(), specs_.end(), [&](const MeasureSpec& s) { return s.id.category == c; }));
}

std::string_view default_registry_text() { return kDefaultMeasureRegistry; }

const MeasureRegistry& default_registry() {
  static const MeasureRegistry reg = MeasureRegistry::parse(kDefaultMeasureRegistry);
  return reg;
}

}  // namespace speechcx
