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

#include "speechcx/transcript.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "speechcx/error.hpp"
#include "speechcx/io_util.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

namespace {

using nlohmann::json;

// Parsers write brackets in leaves as -LRB-/-RRB- (and -LCB-/-RCB-,
// -LSB-/-RSB-); tokens may carry either spelling.
bool same_word(std::string_view leaf, std::string_view form) {
  if (leaf == form) return true;
  static const std::pair<std::string_view, std::string_view> kEscapes[] = {
      {"-LRB-", "("}, {"-RRB-", ")"}, {"-LCB-", "{"},
      {"-RCB-", "}"}, {"-LSB-", "["}, {"-RSB-", "]"}};
  for (const auto& [escaped, raw] : kEscapes) {
    if ((leaf == escaped && form == raw) || (leaf == raw && form == escaped)) return true;
  }
  return false;
}

std::string field_string(const json& obj, const char* key, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ValidationError(std::string(where) + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

void check_sentence(const Sentence& s, std::string_view context) {
  for (std::size_t k = 0; k < s.tokens.size(); ++k) {
    if (s.tokens[k].form.empty() || s.tokens[k].pos.empty()) {
      throw ValidationError(std::string(context) + ": token " + std::to_string(k) +
                            " has an empty form or POS");
    }
  }
  const auto leafs = leaves(s.tree);
  if (leafs.size() != s.tokens.size()) {
    throw ValidationError(std::string(context) + ": parse has " + std::to_string(leafs.size()) +
                          " leaves but " + std::to_string(s.tokens.size()) + " tokens");
  }
  for (std::size_t k = 0; k < leafs.size(); ++k) {
    if (!same_word(leafs[k]->leaf_text, s.tokens[k].form)) {
      throw ValidationError(std::string(context) + ": leaf " + std::to_string(k) + " '" +
                            leafs[k]->leaf_text + "' does not match token '" +
                            s.tokens[k].form + "'");
    }
  }
}

}  // namespace

Sentence make_sentence(std::vector<Token> tokens, std::string parse) {
  Sentence s;
  s.tokens = std::move(tokens);
  s.tree = parse_ptb(parse);
  s.parse = std::move(parse);
  check_sentence(s, "sentence");
  return s;
}

void validate_document(const Document& doc, std::string_view context) {
  const std::string prefix = context.empty() ? std::string() : std::string(context) + ": ";
  if (doc.id.empty()) throw ValidationError(prefix + "document id is empty");
  if (doc.sentences.empty()) {
    throw ValidationError(prefix + "document '" + doc.id + "' has no sentences");
  }
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    check_sentence(doc.sentences[i],
                   prefix + "document '" + doc.id + "' sentence " + std::to_string(i));
  }
}

Document parse_document_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("document record is not a JSON object");

  Document doc;
  doc.id = field_string(j, "id", "document");
  doc.speaker_id = field_string(j, "speaker_id", "document '" + doc.id + "'");
  doc.subgroup = field_string(j, "subgroup", "document '" + doc.id + "'");
  const auto sents = j.find("sentences");
  if (sents == j.end() || !sents->is_array()) {
    throw ValidationError("document '" + doc.id + "': missing array field 'sentences'");
  }
  for (std::size_t i = 0; i < sents->size(); ++i) {
    const json& sj = (*sents)[i];
    const std::string where = "document '" + doc.id + "' sentence " + std::to_string(i);
    if (!sj.is_object()) throw ValidationError(where + ": not an object");
    Sentence s;
    s.parse = field_string(sj, "parse", where);
    const auto toks = sj.find("tokens");
    if (toks == sj.end() || !toks->is_array()) {
      throw ValidationError(where + ": missing array field 'tokens'");
    }
    for (const json& tj : *toks) {
      if (!tj.is_object()) throw ValidationError(where + ": token is not an object");
      s.tokens.push_back({field_string(tj, "form", where), field_string(tj, "lemma", where),
                          field_string(tj, "pos", where)});
    }
    try {
      s.tree = parse_ptb(s.parse);
    } catch (const ParseError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    doc.sentences.push_back(std::move(s));
  }
  validate_document(doc);
  return doc;
}

std::string document_to_json(const Document& doc) {
  json j;
  j["id"] = doc.id;
  j["speaker_id"] = doc.speaker_id;
  j["subgroup"] = doc.subgroup;
  json sents = json::array();
  for (const Sentence& s : doc.sentences) {
    json toks = json::array();
    for (const Token& t : s.tokens) {
      toks.push_back({{"form", t.form}, {"lemma", t.lemma}, {"pos", t.pos}});
    }
    sents.push_back({{"tokens", std::move(toks)}, {"parse", s.parse}});
  }
  j["sentences"] = std::move(sents);
  return j.dump();
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus '" + path.string() + "'");
  std::vector<Document> docs;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Document doc;
    try {
      doc = parse_document_json(line);
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(doc.id).second) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": duplicate document id '" + doc.id + "'");
    }
    docs.push_back(std::move(doc));
  }
  if (in.bad()) throw IoError("error reading corpus '" + path.string() + "'");
  return docs;
}

void write_corpus(const std::vector<Document>& docs, const std::filesystem::path& path) {
  std::string out;
  for (const Document& d : docs) {
    out += document_to_json(d);
    out += '\n';
  }
  write_text_file(path, out);
}

void ScoreTable::validate() const {
  if (values.size() != row_ids.size()) {
    throw ValidationError("score table has " + std::to_string(values.size()) + " rows but " +
                          std::to_string(row_ids.size()) + " row ids");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != columns.size()) {
      throw ValidationError("score table row '" + row_ids[i] + "' has " +
                            std::to_string(values[i].size()) + " values but " +
                            std::to_string(columns.size()) + " columns");
    }
  }
  std::set<std::string_view> seen;
  for (const std::string& c : columns) {
    if (!seen.insert(c).second) throw ValidationError("duplicate score column '" + c + "'");
  }
}

std::optional<std::size_t> ScoreTable::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> ScoreTable::row_index(std::string_view id) const {
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    if (row_ids[i] == id) return i;
  }
  return std::nullopt;
}

std::vector<Score> ScoreTable::column(std::size_t j) const {
  std::vector<Score> out;
  out.reserve(values.size());
  for (const auto& row : values) out.push_back(row.at(j));
  return out;
}

std::string score_table_csv(const ScoreTable& table) {
  table.validate();
  std::string out = "doc_id";
  for (const std::string& c : table.columns) {
    out += ',';
    out += csv_field(c);
  }
  out += '\n';
  for (std::size_t i = 0; i < table.row_ids.size(); ++i) {
    out += csv_field(table.row_ids[i]);
    for (const Score& v : table.values[i]) {
      out += ',';
      if (v) out += format_score(*v);
    }
    out += '\n';
  }
  return out;
}

void write_score_table(const ScoreTable& table, const std::filesystem::path& path) {
  write_text_file(path, score_table_csv(table));
}

}  // namespace speechcx
