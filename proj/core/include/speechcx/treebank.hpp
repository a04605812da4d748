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

#ifndef SPEECHCX_TREEBANK_HPP_
#define SPEECHCX_TREEBANK_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace speechcx {

// A constituency tree node. Preterminals are the leaves: they carry the POS
// tag as label and the surface word as leaf_text, and have no children.
struct TreeNode {
  std::string label;
  std::vector<TreeNode> children;
  std::string leaf_text;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const TreeNode&) const = default;
};

// Parses a single Penn-Treebank bracketed expression, e.g.
// "(S (NP (DT The) (NN dog)) (VP (VBD barked)))". An unlabeled outermost
// bracket "( (S ...) )" is read as ROOT. Throws ParseError.
TreeNode parse_ptb(std::string_view text);

// Inverse of parse_ptb: single-line bracketed form with one space between
// siblings.
std::string to_string(const TreeNode& tree);

// Preterminal nodes in left-to-right order.
std::vector<const TreeNode*> leaves(const TreeNode& tree);

std::size_t leaf_count(const TreeNode& tree);

// Height of the tree counting nodes; a lone preterminal has depth 1.
std::size_t depth(const TreeNode& tree);

// Label without function tags or co-indices: "NP-SBJ-1" -> "NP",
// "S=2" -> "S". Labels that start with '-' ("-LRB-", "-NONE-") are kept.
std::string_view basic_category(std::string_view label);

// Penn punctuation tags excluded from word counts:
// . , :  '' -LRB- -RRB-
bool is_punctuation_tag(std::string_view pos);

}  // namespace speechcx

#endif  // SPEECHCX_TREEBANK_HPP_
