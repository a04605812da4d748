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

#include "speechcx/tree_pattern.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "speechcx/error.hpp"
#include "speechcx/text_util.hpp"

namespace speechcx {

enum class Op {
  kChild,
  kDescendant,
  kParent,
  kAncestor,
  kHead,
  kFirstChild,
  kNextSister,
  kPrevSister,
  kLaterSister,
  kEarlierSister,
  kCoordinates,
};

struct NamePattern {
  std::string text;
  bool any = false;
  bool prefix = false;

  bool matches(std::string_view category) const {
    if (any) return true;
    if (prefix) return category.substr(0, std::min(category.size(), text.size())) == text;
    return category == text;
  }
};

struct TreePattern::Expr {
  std::vector<NamePattern> names;
  std::optional<std::vector<std::string>> words;

  struct Relation {
    Op op;
    bool negated = false;
    std::shared_ptr<const Expr> operand;
  };
  std::vector<Relation> relations;
};

namespace {

using Expr = TreePattern::Expr;

// ---------------------------------------------------------------------------
// Tokenizer

enum class Tok { kLParen, kRParen, kLBrace, kRBrace, kLBracket, kRBracket, kComma,
                 kBang, kEqEq, kOp, kWord, kQuoted, kEnd };

struct Token {
  Tok kind;
  std::string text;
  Op op = Op::kChild;
  std::size_t offset = 0;
};

std::optional<Op> keyword_op(std::string_view word) {
  if (word == "immediately-dominates") return Op::kChild;
  if (word == "dominates") return Op::kDescendant;
  if (word == "immediately-dominated-by") return Op::kParent;
  if (word == "dominated-by") return Op::kAncestor;
  if (word == "has-head") return Op::kHead;
  if (word == "has-first-child") return Op::kFirstChild;
  if (word == "immediately-precedes") return Op::kNextSister;
  if (word == "immediately-follows") return Op::kPrevSister;
  if (word == "precedes") return Op::kLaterSister;
  if (word == "follows") return Op::kEarlierSister;
  if (word == "coordinates") return Op::kCoordinates;
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t len, Op op = Op::kChild) {
    out.push_back({kind, std::string(s.substr(i, len)), op, i});
    i += len;
  };
  auto at = [&](std::size_t k) { return i + k < s.size() ? s[i + k] : '\0'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '(': push(Tok::kLParen, 1); continue;
      case ')': push(Tok::kRParen, 1); continue;
      case '{': push(Tok::kLBrace, 1); continue;
      case '}': push(Tok::kRBrace, 1); continue;
      case '[': push(Tok::kLBracket, 1); continue;
      case ']': push(Tok::kRBracket, 1); continue;
      case ',': push(Tok::kComma, 1); continue;
      case '!': push(Tok::kBang, 1); continue;
      default: break;
    }
    if (c == '=' && at(1) == '=') {
      push(Tok::kEqEq, 2);
      continue;
    }
    if (c == '<') {
      switch (at(1)) {
        case '<': push(Tok::kOp, 2, Op::kDescendant); continue;
        case '#': push(Tok::kOp, 2, Op::kHead); continue;
        case ',': push(Tok::kOp, 2, Op::kFirstChild); continue;
        case '%': push(Tok::kOp, 2, Op::kCoordinates); continue;
        default: push(Tok::kOp, 1, Op::kChild); continue;
      }
    }
    if (c == '>') {
      if (at(1) == '>') {
        push(Tok::kOp, 2, Op::kAncestor);
      } else {
        push(Tok::kOp, 1, Op::kParent);
      }
      continue;
    }
    if (c == '$' && (at(1) == '+' || at(1) == '-')) {
      const bool plus = at(1) == '+';
      if (at(2) == at(1)) {
        push(Tok::kOp, 3, plus ? Op::kLaterSister : Op::kEarlierSister);
      } else {
        push(Tok::kOp, 2, plus ? Op::kNextSister : Op::kPrevSister);
      }
      continue;
    }
    if (c == '"') {
      const std::size_t close = s.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw PatternError("unterminated quoted name at offset " + std::to_string(i));
      }
      out.push_back({Tok::kQuoted, std::string(s.substr(i + 1, close - i - 1)), Op::kChild, i});
      i = close + 1;
      continue;
    }
    const std::size_t begin = i;
    while (i < s.size()) {
      const char d = s[i];
      if (std::isspace(static_cast<unsigned char>(d)) ||
          std::string_view("(){}[],!<>\"").find(d) != std::string_view::npos) {
        break;
      }
      ++i;
    }
    std::string word(s.substr(begin, i - begin));
    if (auto op = keyword_op(word)) {
      out.push_back({Tok::kOp, std::move(word), *op, begin});
    } else {
      out.push_back({Tok::kWord, std::move(word), Op::kChild, begin});
    }
  }
  out.push_back({Tok::kEnd, "", Op::kChild, s.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class PatternParser {
 public:
  explicit PatternParser(std::string_view src) : src_(src), toks_(tokenize(src)) {}

  std::shared_ptr<const Expr> parse() {
    auto expr = parse_node();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return expr;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw PatternError(what + " at offset " + std::to_string(peek().offset) + " in pattern '" +
                       std::string(src_) + "'");
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }

  std::shared_ptr<Expr> parse_node() {
    std::shared_ptr<Expr> expr;
    if (peek().kind == Tok::kLParen) {
      next();
      auto inner = parse_node();
      expect(Tok::kRParen, "')'");
      expr = std::make_shared<Expr>(*inner);
    } else {
      expr = parse_desc();
    }
    while (peek().kind == Tok::kBang || peek().kind == Tok::kOp) {
      expr->relations.push_back(parse_relation());
    }
    return expr;
  }

  Expr::Relation parse_relation() {
    Expr::Relation rel;
    if (peek().kind == Tok::kBang) {
      next();
      rel.negated = true;
    }
    if (peek().kind != Tok::kOp) fail("expected a relation after '!'");
    rel.op = next().op;
    if (peek().kind == Tok::kLParen) {
      next();
      rel.operand = parse_node();
      expect(Tok::kRParen, "')'");
    } else {
      rel.operand = parse_desc();
    }
    return rel;
  }

  NamePattern parse_name() {
    const Token& t = peek();
    if (t.kind == Tok::kQuoted) {
      next();
      if (t.text.empty()) fail("empty quoted name");
      return NamePattern{t.text, false, false};
    }
    if (t.kind != Tok::kWord) fail("expected a label name");
    next();
    if (t.text == "__") return NamePattern{"", true, false};
    if (t.text.size() > 1 && t.text.back() == '*') {
      return NamePattern{t.text.substr(0, t.text.size() - 1), false, true};
    }
    if (t.text.find('*') != std::string::npos) fail("'*' is only allowed at the end of a name");
    return NamePattern{t.text, false, false};
  }

  std::vector<NamePattern> parse_set() {
    expect(Tok::kLBrace, "'{'");
    std::vector<NamePattern> names;
    names.push_back(parse_name());
    while (peek().kind == Tok::kComma) {
      next();
      names.push_back(parse_name());
    }
    expect(Tok::kRBrace, "'}'");
    return names;
  }

  std::shared_ptr<Expr> parse_desc() {
    auto expr = std::make_shared<Expr>();
    const Token& t = peek();
    if (t.kind == Tok::kWord && t.text == "label" &&
        (toks_[pos_ + 1].kind == Tok::kEqEq ||
         (toks_[pos_ + 1].kind == Tok::kWord && toks_[pos_ + 1].text == "in"))) {
      next();
      if (next().kind == Tok::kEqEq) {
        expr->names.push_back(parse_name());
      } else {
        expr->names = parse_set();
      }
    } else if (t.kind == Tok::kLBrace) {
      expr->names = parse_set();
    } else if (t.kind == Tok::kWord || t.kind == Tok::kQuoted) {
      expr->names.push_back(parse_name());
    } else {
      fail("expected a node description");
    }
    if (peek().kind == Tok::kLBracket) {
      next();
      std::vector<std::string> words;
      while (true) {
        if (peek().kind != Tok::kWord && peek().kind != Tok::kQuoted) fail("expected a word");
        words.push_back(to_lower(next().text));
        if (peek().kind == Tok::kComma) {
          next();
          continue;
        }
        expect(Tok::kRBracket, "']'");
        break;
      }
      expr->words = std::move(words);
    }
    return expr;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Matching over a preorder-indexed view of the tree.

struct FlatNode {
  const TreeNode* node;
  int parent;
  int subtree_end;  // one past the last preorder index in this subtree
  std::vector<int> children;
  std::string_view category;
};

class FlatTree {
 public:
  explicit FlatTree(const TreeNode& root) { add(root, -1); }

  const FlatNode& operator[](int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(nodes_.size()); }

  // Position of i among its parent's children, or -1 for the root.
  int sibling_index(int i) const {
    const int p = nodes_[i].parent;
    if (p < 0) return -1;
    const auto& kids = nodes_[p].children;
    return static_cast<int>(std::find(kids.begin(), kids.end(), i) - kids.begin());
  }

 private:
  int add(const TreeNode& node, int parent) {
    const int index = size();
    nodes_.push_back({&node, parent, 0, {}, basic_category(node.label)});
    for (const TreeNode& child : node.children) {
      const int c = add(child, index);
      nodes_[index].children.push_back(c);
    }
    nodes_[index].subtree_end = size();
    return index;
  }

  std::vector<FlatNode> nodes_;
};

class Matcher {
 public:
  explicit Matcher(const FlatTree& tree) : t_(tree) {}

  bool matches(const Expr& e, int i) const {
    if (!desc_matches(e, i)) return false;
    for (const auto& rel : e.relations) {
      if (holds(rel, i) == rel.negated) return false;
    }
    return true;
  }

 private:
  bool desc_matches(const Expr& e, int i) const {
    const FlatNode& n = t_[i];
    const bool name_ok = std::any_of(e.names.begin(), e.names.end(),
                                     [&](const NamePattern& p) { return p.matches(n.category); });
    if (!name_ok) return false;
    if (e.words) {
      if (!n.node->is_leaf()) return false;
      const std::string word = to_lower(n.node->leaf_text);
      if (std::find(e.words->begin(), e.words->end(), word) == e.words->end()) return false;
    }
    return true;
  }

  bool head_chain(int i, const Expr& target) const {
    for (int c : t_[i].children) {
      if (matches(target, c)) return true;
    }
    for (int c : t_[i].children) {
      if (t_[c].category == t_[i].category && head_chain(c, target)) return true;
    }
    return false;
  }

  bool is_punct(int i) const {
    return t_[i].node->is_leaf() && is_punctuation_tag(t_[i].node->label);
  }

  bool flanked_by_like_sisters(int child) const {
    const int p = t_[child].parent;
    const auto& kids = t_[p].children;
    const int at = t_.sibling_index(child);
    int left = at - 1;
    while (left >= 0 && is_punct(kids[left])) --left;
    int right = at + 1;
    while (right < static_cast<int>(kids.size()) && is_punct(kids[right])) ++right;
    if (left < 0 || right >= static_cast<int>(kids.size())) return false;
    return t_[kids[left]].category == t_[kids[right]].category;
  }

  bool holds(const Expr::Relation& rel, int i) const {
    const Expr& target = *rel.operand;
    const FlatNode& n = t_[i];
    switch (rel.op) {
      case Op::kChild:
        return std::any_of(n.children.begin(), n.children.end(),
                           [&](int c) { return matches(target, c); });
      case Op::kDescendant:
        for (int d = i + 1; d < n.subtree_end; ++d) {
          if (matches(target, d)) return true;
        }
        return false;
      case Op::kParent:
        return n.parent >= 0 && matches(target, n.parent);
      case Op::kAncestor:
        for (int a = n.parent; a >= 0; a = t_[a].parent) {
          if (matches(target, a)) return true;
        }
        return false;
      case Op::kHead:
        return head_chain(i, target);
      case Op::kFirstChild:
        return !n.children.empty() && matches(target, n.children.front());
      case Op::kCoordinates:
        return std::any_of(n.children.begin(), n.children.end(), [&](int c) {
          return matches(target, c) && flanked_by_like_sisters(c);
        });
      case Op::kNextSister:
      case Op::kPrevSister:
      case Op::kLaterSister:
      case Op::kEarlierSister: {
        if (n.parent < 0) return false;
        const auto& kids = t_[n.parent].children;
        const int at = t_.sibling_index(i);
        const int count = static_cast<int>(kids.size());
        int from = 0;
        int to = 0;
        if (rel.op == Op::kNextSister) {
          from = at + 1;
          to = std::min(at + 2, count);
        } else if (rel.op == Op::kPrevSister) {
          from = std::max(at - 1, 0);
          to = at;
        } else if (rel.op == Op::kLaterSister) {
          from = at + 1;
          to = count;
        } else {
          from = 0;
          to = at;
        }
        for (int k = from; k < to; ++k) {
          if (matches(target, kids[k])) return true;
        }
        return false;
      }
    }
    return false;
  }

  const FlatTree& t_;
};

}  // namespace

TreePattern TreePattern::compile(std::string_view expression) {
  TreePattern pattern;
  pattern.source_ = std::string(expression);
  pattern.expr_ = PatternParser(expression).parse();
  return pattern;
}

std::vector<const TreeNode*> match_nodes(const TreeNode& tree, const TreePattern& pattern) {
  const FlatTree flat(tree);
  const Matcher matcher(flat);
  std::vector<const TreeNode*> out;
  for (int i = 0; i < flat.size(); ++i) {
    if (matcher.matches(*pattern.expr_, i)) out.push_back(flat[i].node);
  }
  return out;
}

std::size_t match_count(const TreeNode& tree, const TreePattern& pattern) {
  return match_nodes(tree, pattern).size();
}

}  // namespace speechcx
