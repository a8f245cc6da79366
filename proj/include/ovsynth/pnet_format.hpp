#pragma once

// Reader and writer for the line-oriented `.pnet` text format:
//
//   # comment
//   net two_machines
//   places P1 P2 P3
//   control Pc1                 # places added by synthesis
//   initial P1 P3 Pc1*2
//   transition c1 controllable { in P1 ; out P2 }
//   forbidden { expr "(P2 & P3)" deadlock state P1 P3 }
//
// Statements may span lines. `name*k` gives a token count or arc weight and
// is only accepted on control places; plant arcs and markings are unit.

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ovsynth/error.hpp"
#include "ovsynth/overstates.hpp"
#include "ovsynth/partition.hpp"
#include "ovsynth/petri_net.hpp"
#include "ovsynth/place_expr.hpp"

namespace ovs {

struct PipelineOptions {
  std::size_t support_cap = kDefaultSupportCap;
  std::size_t state_budget = std::size_t{1} << 20;
  bool fallback = false;
  bool exact_cover = false;
};

struct NetDocument {
  PetriNet net;
  BadStateSpec bad;
  PipelineOptions options;
};

namespace detail {

struct Token {
  enum class Kind { Word, String, Number, Star, LBrace, RBrace, Semi, End } kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

inline std::string where(const Token& t) {
  return "line " + std::to_string(t.line) + ", column " + std::to_string(t.col);
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_word = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (c == '"') {
      const std::size_t l = line, k = col;
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"')
        fail(ErrorCode::ParseError, "line " + std::to_string(l) + ", column " + std::to_string(k) +
                                        ": unterminated string");
      out.push_back(Token{Token::Kind::String, std::string(src.substr(i + 1, j - i - 1)), l, k});
      advance(j - i + 1);
    } else if (c == '{' || c == '}' || c == ';' || c == '*') {
      const auto kind = c == '{' ? Token::Kind::LBrace
                        : c == '}' ? Token::Kind::RBrace
                        : c == ';' ? Token::Kind::Semi
                                   : Token::Kind::Star;
      out.push_back(Token{kind, std::string(1, c), line, col});
      advance(1);
    } else if (is_word(c)) {
      std::size_t j = i;
      while (j < src.size() && is_word(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      const bool number = std::all_of(word.begin(), word.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
      // A number only stands alone right after '*'.
      const bool after_star = !out.empty() && out.back().kind == Token::Kind::Star;
      out.push_back(Token{number && after_star ? Token::Kind::Number : Token::Kind::Word, std::move(word), line, col});
      advance(j - i);
    } else {
      fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                      ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

inline bool is_keyword(const Token& t) {
  static const std::set<std::string, std::less<>> kw{"net", "places", "control", "initial", "transition", "forbidden"};
  return t.kind == Token::Kind::Word && kw.count(t.text) > 0;
}

struct WeightedRef {
  Token name;
  int weight = 1;
};

struct RawTransition {
  Token name;
  bool controllable;
  std::vector<WeightedRef> in, out;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  NetDocument parse() {
    std::vector<std::pair<Token, bool>> places;  // name, control
    std::vector<WeightedRef> initial;
    std::vector<RawTransition> transitions;
    std::string name = "net";
    bool have_forbidden = false;
    std::optional<Token> expr;
    bool deadlock = false;
    std::vector<std::vector<Token>> states;

    while (peek().kind != Token::Kind::End) {
      const Token kw = next();
      if (!is_keyword(kw)) error(kw, "expected a statement keyword, found '" + kw.text + "'");
      if (kw.text == "net") {
        name = expect_word("net name").text;
      } else if (kw.text == "places" || kw.text == "control") {
        const bool control = kw.text == "control";
        std::size_t n = 0;
        while (peek_plain_word()) {
          places.emplace_back(next(), control);
          ++n;
        }
        if (n == 0) error(peek(), "'" + kw.text + "' needs at least one place name");
      } else if (kw.text == "initial") {
        while (peek_plain_word()) initial.push_back(weighted());
      } else if (kw.text == "transition") {
        RawTransition t{expect_word("transition name"), false, {}, {}};
        const Token mode = expect_word("'controllable' or 'uncontrollable'");
        if (mode.text == "controllable")
          t.controllable = true;
        else if (mode.text != "uncontrollable")
          error(mode, "expected 'controllable' or 'uncontrollable', found '" + mode.text + "'");
        expect(Token::Kind::LBrace, "'{'");
        expect_literal("in");
        while (peek_plain_word()) t.in.push_back(weighted());
        expect(Token::Kind::Semi, "';'");
        expect_literal("out");
        while (peek_plain_word()) t.out.push_back(weighted());
        expect(Token::Kind::RBrace, "'}'");
        transitions.push_back(std::move(t));
      } else {  // forbidden
        if (have_forbidden) error(kw, "second 'forbidden' block");
        have_forbidden = true;
        expect(Token::Kind::LBrace, "'{'");
        while (peek().kind != Token::Kind::RBrace) {
          const Token item = next();
          if (item.kind == Token::Kind::Word && item.text == "expr") {
            if (expr) error(item, "second 'expr' in forbidden block");
            expr = expect(Token::Kind::String, "quoted expression");
          } else if (item.kind == Token::Kind::Word && item.text == "deadlock") {
            deadlock = true;
          } else if (item.kind == Token::Kind::Word && item.text == "state") {
            std::vector<Token> st;
            while (peek_plain_word() && !is_forbidden_item(peek())) st.push_back(next());
            if (st.empty()) error(item, "'state' needs at least one place name");
            states.push_back(std::move(st));
          } else {
            error(item, "expected 'expr', 'deadlock', 'state' or '}'");
          }
        }
        next();
      }
    }

    NetDocument doc;
    doc.net.set_name(name);
    for (auto& [tok, control] : places) {
      try {
        doc.net.add_place(tok.text, 0, control);
      } catch (const Error& e) {
        fail(e.code(), where(tok) + ": " + e.what());
      }
    }
    Marking m0(doc.net.place_count());
    for (const auto& ref : initial) {
      const PlaceIndex p = resolve(doc.net, ref.name);
      const int tokens = m0[p] + ref.weight;
      if (tokens > doc.net.place(p).capacity())
        fail(ErrorCode::InvalidArcWeight, where(ref.name) + ": plant place '" + ref.name.text +
                                              "' can hold at most one token");
      m0[p] = static_cast<Marking::Token>(tokens);
    }
    doc.net.set_initial(m0);
    for (const auto& raw : transitions) {
      TransitionIndex t = 0;
      try {
        t = doc.net.add_transition(raw.name.text, raw.controllable);
      } catch (const Error& e) {
        fail(e.code(), where(raw.name) + ": " + e.what());
      }
      add_arcs(doc.net, raw.in, t, true);
      add_arcs(doc.net, raw.out, t, false);
    }
    if (have_forbidden) {
      if (expr) {
        try {
          doc.bad.expr = PlaceExpr::parse(expr->text, doc.net);
        } catch (const Error& e) {
          fail(e.code() == ErrorCode::UnknownPlaceName ? ErrorCode::UnknownReference : e.code(),
               where(*expr) + ": " + e.what());
        }
      }
      doc.bad.include_deadlocks = deadlock;
      for (const auto& st : states) {
        Marking m(doc.net.place_count());
        for (const Token& tok : st) m[resolve(doc.net, tok)] = 1;
        doc.bad.explicit_states.push_back(m);
      }
      if (!doc.bad.has_source())
        fail(ErrorCode::InvalidBadStateSpec, "forbidden block names no expression, state or deadlock");
    }
    return doc;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }

  bool peek_plain_word() const { return peek().kind == Token::Kind::Word && !is_keyword(peek()); }
  static bool is_forbidden_item(const Token& t) {
    return t.text == "expr" || t.text == "deadlock" || t.text == "state";
  }

  [[noreturn]] static void error(const Token& at, const std::string& what) {
    fail(ErrorCode::ParseError, where(at) + ": " + what);
  }

  Token expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) error(peek(), "expected " + what + describe_found());
    return next();
  }
  Token expect_word(const std::string& what) {
    if (!peek_plain_word()) error(peek(), "expected " + what + describe_found());
    return next();
  }
  void expect_literal(const std::string& word) {
    if (peek().kind != Token::Kind::Word || peek().text != word)
      error(peek(), "expected '" + word + "'" + describe_found());
    next();
  }
  std::string describe_found() const {
    return peek().kind == Token::Kind::End ? ", found end of input" : ", found '" + peek().text + "'";
  }

  WeightedRef weighted() {
    WeightedRef ref{next(), 1};
    if (peek().kind == Token::Kind::Star) {
      next();
      const Token n = expect(Token::Kind::Number, "a count after '*'");
      ref.weight = std::stoi(n.text);
      if (ref.weight < 1) error(n, "count must be positive");
    }
    return ref;
  }

  static PlaceIndex resolve(const PetriNet& net, const Token& tok) {
    const auto p = net.find_place(tok.text);
    if (!p) fail(ErrorCode::UnknownReference, where(tok) + ": undeclared place '" + tok.text + "'");
    return *p;
  }

  static void add_arcs(PetriNet& net, const std::vector<WeightedRef>& refs, TransitionIndex t, bool input) {
    for (const auto& ref : refs) {
      const PlaceIndex p = resolve(net, ref.name);
      const int current = input ? net.pre(p, t) : net.post(p, t);
      try {
        if (input)
          net.set_pre(p, t, current + ref.weight);
        else
          net.set_post(p, t, current + ref.weight);
      } catch (const Error& e) {
        fail(e.code(), where(ref.name) + ": " + e.what());
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline std::string weighted_name(const std::string& name, int w) {
  return w == 1 ? name : name + "*" + std::to_string(w);
}

}  // namespace detail

inline NetDocument parse_net(std::string_view text) { return detail::Parser(text).parse(); }

/// Canonical text form; `parse_net(print_net(n, b))` reproduces the net.
inline std::string print_net(const PetriNet& net, const BadStateSpec& bad = {}) {
  std::ostringstream os;
  os << "net " << net.name() << "\n";
  for (PlaceIndex p = 0; p < net.place_count();) {
    const bool control = net.place(p).control;
    os << (control ? "control" : "places");
    for (; p < net.place_count() && net.place(p).control == control; ++p) os << " " << net.place(p).name;
    os << "\n";
  }
  os << "initial";
  for (PlaceIndex p = 0; p < net.place_count(); ++p)
    if (net.initial()[p] > 0) os << " " << detail::weighted_name(net.place(p).name, net.initial()[p]);
  os << "\n";
  for (TransitionIndex t = 0; t < net.transition_count(); ++t) {
    os << "transition " << net.transition(t).name << " "
       << (net.transition(t).controllable ? "controllable" : "uncontrollable") << " { in";
    for (PlaceIndex p = 0; p < net.place_count(); ++p)
      if (net.pre(p, t) > 0) os << " " << detail::weighted_name(net.place(p).name, net.pre(p, t));
    os << " ; out";
    for (PlaceIndex p = 0; p < net.place_count(); ++p)
      if (net.post(p, t) > 0) os << " " << detail::weighted_name(net.place(p).name, net.post(p, t));
    os << " }\n";
  }
  if (bad.has_source()) {
    os << "forbidden {";
    if (bad.expr) os << " expr \"" << bad.expr->text() << "\"";
    if (bad.include_deadlocks) os << " deadlock";
    for (const Marking& m : bad.explicit_states) {
      os << " state";
      for (PlaceIndex p : m.support()) os << " " << net.place(p).name;
    }
    os << " }\n";
  }
  return os.str();
}

}  // namespace ovs
