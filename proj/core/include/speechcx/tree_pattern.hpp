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

#ifndef SPEECHCX_TREE_PATTERN_HPP_
#define SPEECHCX_TREE_PATTERN_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "speechcx/treebank.hpp"

namespace speechcx {

// A compiled expression in a small Tregex-like pattern language.
//
//   node      := desc relation* | '(' node ')' relation*
//   desc      := 'label' 'in' set | 'label' '==' name | set | name
//                followed optionally by a word constraint '[' word, ... ']'
//   set       := '{' name (',' name)* '}'
//   relation  := ['!'] op operand
//   operand   := desc | '(' node ')'
//
// Names match the basic category of a node label (function tags stripped).
// A trailing '*' makes a prefix match ("NN*"), "__" matches any node, and a
// double-quoted name matches punctuation labels such as ",". A word
// constraint restricts the node to preterminals whose word, lower-cased, is
// in the list ("IN[that,for]").
//
// Relations, all evaluated against the head node N of the expression:
//
//   A < B    immediately-dominates      B is a child of A
//   A << B   dominates                  B is a proper descendant of A
//   A > B    immediately-dominated-by   B is the parent of A
//   A >> B   dominated-by               B is a proper ancestor of A
//   A <# B   has-head                   B is a child of A, or a child of a
//                                       same-category child chain (VP < VP < VBD)
//   A <, B   has-first-child            B is the first child of A
//   A $+ B   immediately-precedes       B is the next sister of A
//   A $- B   immediately-follows        B is the previous sister of A
//   A $++ B  precedes                   B is a later sister of A
//   A $-- B  follows                    B is an earlier sister of A
//   A <% B   coordinates                B is a child of A whose nearest
//                                       non-punctuation sisters on both sides
//                                       share one category
//
// Several relations after one node are conjoined; '!' negates a relation.
class TreePattern {
 public:
  // Throws PatternError on malformed input.
  static TreePattern compile(std::string_view expression);

  const std::string& source() const { return source_; }

  struct Expr;

 private:
  TreePattern() = default;
  friend std::vector<const TreeNode*> match_nodes(const TreeNode&, const TreePattern&);

  std::string source_;
  std::shared_ptr<const Expr> expr_;
};

// Nodes of tree satisfying pattern, in preorder. Each node appears once.
std::vector<const TreeNode*> match_nodes(const TreeNode& tree, const TreePattern& pattern);

std::size_t match_count(const TreeNode& tree, const TreePattern& pattern);

}  // namespace speechcx

#endif  // SPEECHCX_TREE_PATTERN_HPP_
