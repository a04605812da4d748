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

#ifndef SPEECHCX_REGISTRY_HPP_
#define SPEECHCX_REGISTRY_HPP_

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speechcx/error.hpp"

namespace speechcx {

class ResourceBundle;

enum class Category { kSyntactic, kLexical, kNgram, kInformation };

std::string_view category_name(Category c);

struct MeasureId {
  std::string name;
  Category category = Category::kSyntactic;

  auto operator<=>(const MeasureId&) const = default;
};

// Formula bindings understood by the scorer:
//   syntactic    ratio:<counter>/<counter>, npmod:<counter>
//   lexical      ttr, cttr, lexical_density, mean_word_chars,
//                mean_word_syllables, sophistication (1 frequency list),
//                prevalence (1 prevalence table)
//   ngram        coverage (1 n-gram table)
//   information  deflate_ratio
struct MeasureSpec {
  MeasureId id;
  std::string formula;
  std::vector<std::string> resources;
};

class RegistryError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Ordered set of measures. Text form (TSV):
//   %version <id>
//   <name> <category> <formula> <resource,...|->
class MeasureRegistry {
 public:
  // Throws RegistryError on unknown categories/formulas or duplicate names.
  static MeasureRegistry parse(std::string_view text);
  static MeasureRegistry load(const std::filesystem::path& path);

  const std::string& version() const { return version_; }
  const std::vector<MeasureSpec>& specs() const { return specs_; }
  std::size_t size() const { return specs_.size(); }
  std::vector<std::string> names() const;

  const MeasureSpec* find(std::string_view name) const;
  // Throws RegistryError for an unknown name.
  const MeasureSpec& at(std::string_view name) const;

  // Sub-registry in the given order; throws RegistryError on unknown ids.
  MeasureRegistry restrict_to(const std::vector<std::string>& names) const;

  // Throws ConfigError naming the first resource id the bundle lacks.
  void check_resources(const ResourceBundle& resources) const;

  std::size_t count(Category c) const;

 private:
  std::string version_;
  std::vector<MeasureSpec> specs_;
};

// The 30-measure registry shipped in core/data/measure_registry.tsv.
const MeasureRegistry& default_registry();
std::string_view default_registry_text();

}  // namespace speechcx

#endif  // SPEECHCX_REGISTRY_HPP_
