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

#include "speechcx/treebank.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "speechcx/error.hpp"

namespace speechcx {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class PtbReader {
 public:
  explicit PtbReader(std::string_view text) : text_(text) {}

  TreeNode read_root() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty tree text", pos_);
    TreeNode root = read_node(/*is_root=*/true);
    skip_space();
    if (pos_ != text_.size()) throw ParseError("trailing characters after tree", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string_view read_atom() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    return text_.substr(begin, pos_ - begin);
  }

  void expect_close() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unbalanced brackets: missing ')'", pos_);
    if (text_[pos_] != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
  }

  TreeNode read_node(bool is_root) {
    const std::size_t open = pos_;
    if (text_[pos_] != '(') throw ParseError("expected '('", pos_);
    ++pos_;
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unbalanced brackets: missing ')'", pos_);

    TreeNode node;
    if (text_[pos_] == ')') throw ParseError("empty constituent", open);
    if (text_[pos_] == '(') {
      if (!is_root) throw ParseError("constituent without a label", open);
      node.label = "ROOT";
    } else {
      node.label = std::string(read_atom());
    }

    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unbalanced brackets: missing ')'", pos_);
    if (text_[pos_] == ')') throw ParseError("empty constituent '" + node.label + "'", open);

    if (text_[pos_] != '(') {
      node.leaf_text = std::string(read_atom());
      expect_close();
      return node;
    }
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) throw ParseError("unbalanced brackets: missing ')'", pos_);
      if (text_[pos_] == ')') {
        ++pos_;
        return node;
      }
      if (text_[pos_] != '(') {
        throw ParseError("bare token inside phrasal constituent '" + node.label + "'", pos_);
      }
      node.children.push_back(read_node(/*is_root=*/false));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write(const TreeNode& node, std::string& out) {
  out += '(';
  out += node.label;
  if (node.is_leaf()) {
    out += ' ';
    out += node.leaf_text;
  } else {
    for (const TreeNode& child : node.children) {
      out += ' ';
      write(child, out);
    }
  }
  out += ')';
}

void collect_leaves(const TreeNode& node, std::vector<const TreeNode*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const TreeNode& child : node.children) collect_leaves(child, out);
}

}  // namespace

TreeNode parse_ptb(std::string_view text) { return PtbReader(text).read_root(); }

std::string to_string(const TreeNode& tree) {
  std::string out;
  write(tree, out);
  return out;
}

std::vector<const TreeNode*> leaves(const TreeNode& tree) {
  std::vector<const TreeNode*> out;
  collect_leaves(tree, out);
  return out;
}

std::size_t leaf_count(const TreeNode& tree) {
  if (tree.is_leaf()) return 1;
  std::size_t n = 0;
  for (const TreeNode& child : tree.children) n += leaf_count(child);
  return n;
}

std::size_t depth(const TreeNode& tree) {
  std::size_t deepest = 0;
  for (const TreeNode& child : tree.children) deepest = std::max(deepest, depth(child));
  return deepest + 1;
}

std::string_view basic_category(std::string_view label) {
  if (label.empty() || label.front() == '-') return label;
  const std::size_t cut = label.find_first_of("-=");
  if (cut == std::string_view::npos || cut == 0) return label;
  return label.substr(0, cut);
}

bool is_punctuation_tag(std::string_view pos) {
  static constexpr std::array<std::string_view, 7> kPunct = {
      ".", ",", ":", "``", "''", "-LRB-", "-RRB-"};
  return std::find(kPunct.begin(), kPunct.end(), pos) != kPunct.end();
}

}  // namespace speechcx
