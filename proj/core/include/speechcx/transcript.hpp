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

#ifndef SPEECHCX_TRANSCRIPT_HPP_
#define SPEECHCX_TRANSCRIPT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speechcx/treebank.hpp"

namespace speechcx {

// A measure value; nullopt marks a value undefined on the input (zero
// denominators, empty windows). Missing values are never stored as 0.
using Score = std::optional<double>;

struct Token {
  std::string form;
  std::string lemma;
  std::string pos;  // Penn Treebank tag

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string parse;  // bracketed source text
  TreeNode tree;      // parsed form of `parse`
};

struct Document {
  std::string id;
  std::string speaker_id;
  std::string subgroup;
  std::vector<Sentence> sentences;
};

// Builds a sentence from tokens and bracketed parse and checks that the
// parse leaves line up with the tokens. Throws ParseError/ValidationError.
Sentence make_sentence(std::vector<Token> tokens, std::string parse);

// Checks the Document invariants (non-empty id, at least one sentence, leaf
// and token alignment). context is prefixed to error messages.
void validate_document(const Document& doc, std::string_view context = {});

// One JSON-Lines record:
// {"id", "speaker_id", "subgroup", "sentences": [{"tokens": [{"form",
// "lemma", "pos"}], "parse"}]}
Document parse_document_json(std::string_view line);
std::string document_to_json(const Document& doc);

// Reads a JSON-Lines corpus. Blank lines are skipped; document ids must be
// unique. Errors carry the 1-based line number.
std::vector<Document> load_corpus(const std::filesystem::path& path);

void write_corpus(const std::vector<Document>& docs, const std::filesystem::path& path);

// Rows are documents, columns are measures.
struct ScoreTable {
  std::vector<std::string> row_ids;
  std::vector<std::string> columns;
  std::vector<std::vector<Score>> values;  // values[row][column]

  // Throws ValidationError on shape mismatch or duplicate column names.
  void validate() const;

  std::optional<std::size_t> column_index(std::string_view name) const;
  std::optional<std::size_t> row_index(std::string_view id) const;
  std::vector<Score> column(std::size_t j) const;

  bool operator==(const ScoreTable&) const = default;
};

// CSV "doc_id,<measure>,...", one row per document in row order, values as
// %.6g and missing values as empty fields. Throws IoError.
void write_score_table(const ScoreTable& table, const std::filesystem::path& path);
std::string score_table_csv(const ScoreTable& table);

}  // namespace speechcx

#endif  // SPEECHCX_TRANSCRIPT_HPP_
