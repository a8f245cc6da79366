#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ovsynth/error.hpp"
#include "ovsynth/marking.hpp"
#include "ovsynth/petri_net.hpp"

namespace ovs {

/// Boolean predicate over "place is marked", built from place names,
/// `true`, `false`, `!`, `&`, `|` and parentheses. `!` binds tightest, then
/// `&`, then `|`. Place names are resolved against the net at parse time.
class PlaceExpr {
 public:
  static PlaceExpr parse(std::string_view text, const PetriNet& net) {
    PlaceExpr expr;
    expr.text_ = std::string(text);
    Parser parser{text, net, expr.nodes_};
    expr.root_ = parser.parse();
    return expr;
  }

  bool eval(const Marking& m) const { return eval(root_, m); }
  const std::string& text() const noexcept { return text_; }

 private:
  enum class Kind { Const, Place, Not, And, Or };
  struct Node {
    Kind kind;
    bool value = false;
    PlaceIndex place = 0;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
  };

  bool eval(std::size_t n, const Marking& m) const {
    const Node& node = nodes_[n];
    switch (node.kind) {
      case Kind::Const: return node.value;
      case Kind::Place: return m.marked(node.place);
      case Kind::Not: return !eval(node.lhs, m);
      case Kind::And: return eval(node.lhs, m) && eval(node.rhs, m);
      case Kind::Or: return eval(node.lhs, m) || eval(node.rhs, m);
    }
    return false;
  }

  struct Parser {
    std::string_view src;
    const PetriNet& net;
    std::vector<Node>& nodes;
    std::size_t pos = 0;

    std::size_t parse() {
      const std::size_t root = parse_or();
      skip_ws();
      if (pos != src.size()) error("unexpected '" + std::string(1, src[pos]) + "'");
      return root;
    }

    [[noreturn]] void error(const std::string& what) const {
      fail(ErrorCode::ParseError,
           "in expression \"" + std::string(src) + "\" at column " + std::to_string(pos + 1) + ": " + what);
    }

    void skip_ws() {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool accept(char c) {
      skip_ws();
      if (pos < src.size() && src[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    std::size_t push(Node n) {
      nodes.push_back(n);
      return nodes.size() - 1;
    }

    std::size_t parse_or() {
      std::size_t lhs = parse_and();
      while (accept('|')) lhs = push(Node{Kind::Or, false, 0, lhs, parse_and()});
      return lhs;
    }

    std::size_t parse_and() {
      std::size_t lhs = parse_unary();
      while (accept('&')) lhs = push(Node{Kind::And, false, 0, lhs, parse_unary()});
      return lhs;
    }

    std::size_t parse_unary() {
      if (accept('!')) return push(Node{Kind::Not, false, 0, parse_unary(), 0});
      if (accept('(')) {
        const std::size_t inner = parse_or();
        if (!accept(')')) error("expected ')'");
        return inner;
      }
      skip_ws();
      const std::size_t start = pos;
      while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                  src[pos] == '_' || src[pos] == '.'))
        ++pos;
      if (start == pos) error(pos < src.size() ? "unexpected '" + std::string(1, src[pos]) + "'"
                                               : "unexpected end of expression");
      const std::string_view word = src.substr(start, pos - start);
      if (word == "true") return push(Node{Kind::Const, true});
      if (word == "false") return push(Node{Kind::Const, false});
      const auto place = net.find_place(word);
      if (!place) fail(ErrorCode::UnknownPlaceName, "expression references unknown place '" + std::string(word) + "'");
      return push(Node{Kind::Place, false, *place});
    }
  };

  std::string text_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

}  // namespace ovs
