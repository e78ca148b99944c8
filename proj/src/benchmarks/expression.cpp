// Copyright 2026 The W2BGP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "w2bgp/benchmarks.hpp"
#include "w2bgp/error.hpp"

namespace w2bgp {

// Recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'pi' | 'x' index | func '(' expr ')' | '(' expr ')'
// so that -x^2 is -(x^2) and ^ is right-associative.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

  Expression run() {
    Expression out;
    out.dim_ = dim_;
    nodes_ = &out.nodes_;
    out.root_ = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return out;
  }

 private:
  using Op = Expression::Node::Op;

  std::size_t push(Expression::Node node) {
    nodes_->push_back(node);
    return nodes_->size() - 1;
  }

  std::size_t binary(Op op, std::size_t lhs, std::size_t rhs) {
    Expression::Node node;
    node.op = op;
    node.lhs = lhs;
    node.rhs = rhs;
    return push(node);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kParseError, what + " at position " + std::to_string(pos_) +
                                            " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::size_t expr() {
    std::size_t lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Op::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = binary(Op::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  std::size_t term() {
    std::size_t lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Op::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = binary(Op::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  std::size_t unary() {
    if (accept('-')) {
      Expression::Node node;
      node.op = Op::kNeg;
      node.lhs = unary();
      return push(node);
    }
    if (accept('+')) return unary();
    return power();
  }

  std::size_t power() {
    const std::size_t base = primary();
    if (accept('^')) return binary(Op::kPow, base, unary());
    return base;
  }

  std::size_t primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      const std::size_t inner = expr();
      expect(')');
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character");
  }

  std::size_t number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const auto [end, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    Expression::Node node;
    node.op = Op::kConst;
    node.value = value;
    return push(node);
  }

  std::size_t identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view word = text_.substr(start, pos_ - start);
    Expression::Node node;
    if (word == "pi") {
      node.op = Op::kConst;
      node.value = std::numbers::pi;
      return push(node);
    }
    if (word.size() > 1 && word[0] == 'x') {
      std::size_t index = 0;
      const auto [end, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), index);
      if (ec == std::errc() && end == word.data() + word.size()) {
        if (index < 1 || index > dim_) {
          pos_ = start;
          fail("variable " + std::string(word) + " outside x1..x" + std::to_string(dim_));
        }
        node.op = Op::kVar;
        node.var = index - 1;
        return push(node);
      }
    }
    static constexpr std::pair<std::string_view, Op> kFunctions[] = {
        {"sin", Op::kSin}, {"cos", Op::kCos}, {"exp", Op::kExp},
        {"log", Op::kLog}, {"abs", Op::kAbs}, {"sqrt", Op::kSqrt}};
    for (const auto& [name, op] : kFunctions) {
      if (word == name) {
        expect('(');
        node.op = op;
        node.lhs = expr();
        expect(')');
        return push(node);
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(word) + "'");
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t pos_ = 0;
  std::vector<Expression::Node>* nodes_ = nullptr;
};

Expression Expression::parse(std::string_view text, std::size_t dim) {
  return ExpressionParser(text, dim).run();
}

double Expression::evaluate(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw Error(ErrorKind::kDimensionMismatch, "expression over " + std::to_string(dim_) +
                                                   " variables, got " + std::to_string(x.size()));
  }
  // Children always precede their parent, so one forward pass suffices.
  std::vector<double> value(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Node::Op::kConst: value[i] = n.value; break;
      case Node::Op::kVar: value[i] = x[n.var]; break;
      case Node::Op::kAdd: value[i] = value[n.lhs] + value[n.rhs]; break;
      case Node::Op::kSub: value[i] = value[n.lhs] - value[n.rhs]; break;
      case Node::Op::kMul: value[i] = value[n.lhs] * value[n.rhs]; break;
      case Node::Op::kDiv: value[i] = value[n.lhs] / value[n.rhs]; break;
      case Node::Op::kPow: value[i] = std::pow(value[n.lhs], value[n.rhs]); break;
      case Node::Op::kNeg: value[i] = -value[n.lhs]; break;
      case Node::Op::kSin: value[i] = std::sin(value[n.lhs]); break;
      case Node::Op::kCos: value[i] = std::cos(value[n.lhs]); break;
      case Node::Op::kExp: value[i] = std::exp(value[n.lhs]); break;
      case Node::Op::kLog: value[i] = std::log(value[n.lhs]); break;
      case Node::Op::kAbs: value[i] = std::abs(value[n.lhs]); break;
      case Node::Op::kSqrt: value[i] = std::sqrt(value[n.lhs]); break;
    }
  }
  return value[root_];
}

}  // namespace w2bgp
