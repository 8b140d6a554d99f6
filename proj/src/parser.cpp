#include "evlab/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "evlab/errors.hpp"

namespace evlab {
namespace {

enum class Tok {
  LParen,
  RParen,
  Not,
  And,
  Or,
  Arrow,
  Iff,
  Knows,
  Entails,
  Believes,
  Box,
  Diamond,
  EffortBox,
  EffortDiamond,
  True,
  False,
  Ident,
  End,
};

const char* tok_spelling(Tok t) {
  switch (t) {
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::Not: return "~";
    case Tok::And: return "&";
    case Tok::Or: return "|";
    case Tok::Arrow: return "->";
    case Tok::Iff: return "<->";
    case Tok::Knows: return "K";
    case Tok::Entails: return "E";
    case Tok::Believes: return "B";
    case Tok::Box: return "[]";
    case Tok::Diamond: return "<>";
    case Tok::EffortBox: return "[*]";
    case Tok::EffortDiamond: return "<*>";
    case Tok::True: return "true";
    case Tok::False: return "false";
    case Tok::Ident: return "<atom>";
    case Tok::End: return "<end of input>";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::size_t offset;  // byte offset of the first character
  std::string text;    // identifier spelling, when kind == Ident
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t at = pos_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, at, {}});
        return out;
      }
      char c = src_[pos_];
      switch (c) {
        case '(': out.push_back(single(Tok::LParen)); break;
        case ')': out.push_back(single(Tok::RParen)); break;
        case '~': out.push_back(single(Tok::Not)); break;
        case '&': out.push_back(single(Tok::And)); break;
        case '|': out.push_back(single(Tok::Or)); break;
        case 'K': out.push_back(single(Tok::Knows)); break;
        case 'E': out.push_back(single(Tok::Entails)); break;
        case 'B': out.push_back(single(Tok::Believes)); break;
        case '-':
          out.push_back(pair(Tok::Arrow, '>'));
          break;
        case '[':
          // "[]" or "[*]"
          if (peek(1) == ']') {
            pos_ += 2;
            out.push_back({Tok::Box, at, {}});
          } else if (peek(1) == '*' && peek(2) == ']') {
            pos_ += 3;
            out.push_back({Tok::EffortBox, at, {}});
          } else {
            fail(pos_ + 1, {"]", "*]"});
          }
          break;
        case '<':
          // "<->", "<>" or "<*>"
          if (peek(1) == '-' && peek(2) == '>') {
            pos_ += 3;
            out.push_back({Tok::Iff, at, {}});
          } else if (peek(1) == '>') {
            pos_ += 2;
            out.push_back({Tok::Diamond, at, {}});
          } else if (peek(1) == '*' && peek(2) == '>') {
            pos_ += 3;
            out.push_back({Tok::EffortDiamond, at, {}});
          } else {
            fail(pos_ + 1, {"->", ">", "*>"});
          }
          break;
        default:
          if (c >= 'a' && c <= 'z') {
            out.push_back(ident());
          } else {
            fail(pos_, {});
          }
      }
    }
  }

 private:
  char peek(std::size_t ahead) const {
    std::size_t i = pos_ + ahead;
    return i < src_.size() ? src_[i] : '\0';
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  Token single(Tok kind) { return {kind, pos_++, {}}; }

  Token pair(Tok kind, char second) {
    std::size_t at = pos_;
    if (peek(1) != second) fail(pos_ + 1, {std::string(1, second)});
    pos_ += 2;
    return {kind, at, {}};
  }

  Token ident() {
    std::size_t at = pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      bool body = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_';
      if (!body) break;
      ++pos_;
    }
    std::string text(src_.substr(at, pos_ - at));
    if (text == "true") return {Tok::True, at, {}};
    if (text == "false") return {Tok::False, at, {}};
    return {Tok::Ident, at, std::move(text)};
  }

  [[noreturn]] void fail(std::size_t at, std::vector<std::string> want) {
    std::string msg = "unexpected character at offset " + std::to_string(at);
    if (at < src_.size()) msg += std::string(": '") + src_[at] + "'";
    throw ParseError(std::move(msg), at, std::move(want));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Recursive descent over the token stream:
//   formula := impl ( "<->" impl )*        left-assoc
//   impl    := disj ( "->" impl )?         right-assoc
//   disj    := conj ( "|" conj )*
//   conj    := unary ( "&" unary )*
//   unary   := ("~"|"K"|"E"|"B"|"[]"|"<>"|"[*]"|"<*>") unary | primary
//   primary := "true" | "false" | atom | "(" formula ")"
class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& cur() const { return toks_[idx_]; }
  bool at(Tok kind) const { return cur().kind == kind; }

  bool eat(Tok kind) {
    if (!at(kind)) return false;
    ++idx_;
    return true;
  }

  void expect(Tok kind) {
    if (!eat(kind)) fail({tok_spelling(kind)});
  }

  [[noreturn]] void fail(std::vector<std::string> want) {
    const Token& t = cur();
    std::string got = t.kind == Tok::Ident ? "'" + t.text + "'"
                                           : std::string("'") +
                                                 tok_spelling(t.kind) + "'";
    if (t.kind == Tok::End) got = "end of input";
    std::string msg = "unexpected " + got + " at offset " +
                      std::to_string(t.offset);
    if (!want.empty()) {
      msg += "; expected ";
      for (std::size_t i = 0; i < want.size(); ++i) {
        if (i) msg += i + 1 == want.size() ? " or " : ", ";
        msg += want[i];
      }
    }
    throw ParseError(std::move(msg), t.offset, std::move(want));
  }

  FormulaPtr formula() {
    FormulaPtr f = impl();
    while (eat(Tok::Iff)) f = evlab::iff(std::move(f), impl());
    return f;
  }

  FormulaPtr impl() {
    FormulaPtr f = disj();
    if (eat(Tok::Arrow)) return evlab::implies(std::move(f), impl());
    return f;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (eat(Tok::Or)) f = evlab::disj(std::move(f), conj());
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = unary();
    while (eat(Tok::And)) f = evlab::conj(std::move(f), unary());
    return f;
  }

  FormulaPtr unary() {
    switch (cur().kind) {
      case Tok::Not: ++idx_; return neg(unary());
      case Tok::Knows: ++idx_; return knows(unary());
      case Tok::Entails: ++idx_; return entails(unary());
      case Tok::Believes: ++idx_; return believes(unary());
      case Tok::Box: ++idx_; return box(unary());
      case Tok::Diamond: ++idx_; return diamond(unary());
      case Tok::EffortBox: ++idx_; return effort_box(unary());
      case Tok::EffortDiamond: ++idx_; return effort_diamond(unary());
      default: return primary();
    }
  }

  FormulaPtr primary() {
    if (eat(Tok::True)) return top();
    if (eat(Tok::False)) return bottom();
    if (at(Tok::Ident)) {
      FormulaPtr f = atom(cur().text);
      ++idx_;
      return f;
    }
    if (eat(Tok::LParen)) {
      FormulaPtr f = formula();
      expect(Tok::RParen);
      return f;
    }
    fail({"~", "K", "E", "B", "[]", "<>", "[*]", "<*>", "true", "false",
          "<atom>", "("});
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace evlab
