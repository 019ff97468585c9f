// Text grammar for formulas.
//
//   atoms       [a-z][a-z0-9_]*
//   keywords    bot top ne nbot might dia box gdia gbox
//   unary       ~  !  might dia box gdia gbox
//   binary      /\   \/   \/.   \\/   \\/.   ->
//   dep atoms   =(a1, ..., an; a)   and  =(a)  for constancy
//   holes       _1 _2 ...
//
// Abbreviations expand at parse time: top ~> ~bot, nbot ~> might bot,
// !f ~> f -> bot. Precedence, tightest first: unary, /\, the four
// disjunctions (one level, parentheses required when flavors mix), ->
// (right-associative).
#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"

namespace teamlogic {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

namespace detail {

enum class Tok {
  Atom, Hole, Bot, Top, NE, NBot,
  Tilde, Bang, Might, Dia, Box, GDia, GBox,
  AndOp, VeeOp, DorOp, GorOp, LGorOp, ImplOp,
  DepOpen,  // "=("
  LParen, RParen, Comma, Semi, End,
};

struct Token {
  Tok tok;
  std::string text;
  size_t pos = 0;
  int hole = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    cur_.pos = i_;
    if (i_ >= src_.size()) {
      cur_.tok = Tok::End;
      return;
    }
    char c = src_[i_];
    if (c == '(') { cur_.tok = Tok::LParen; ++i_; return; }
    if (c == ')') { cur_.tok = Tok::RParen; ++i_; return; }
    if (c == ',') { cur_.tok = Tok::Comma; ++i_; return; }
    if (c == ';') { cur_.tok = Tok::Semi; ++i_; return; }
    if (c == '~') { cur_.tok = Tok::Tilde; ++i_; return; }
    if (c == '!') { cur_.tok = Tok::Bang; ++i_; return; }
    if (c == '=') {
      if (i_ + 1 < src_.size() && src_[i_ + 1] == '(') {
        cur_.tok = Tok::DepOpen;
        i_ += 2;
        return;
      }
      throw ParseError("expected '(' after '='", i_);
    }
    if (c == '-') {
      if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
        cur_.tok = Tok::ImplOp;
        i_ += 2;
        return;
      }
      throw ParseError("unknown token '-'", i_);
    }
    if (c == '/') {
      if (i_ + 1 < src_.size() && src_[i_ + 1] == '\\') {
        cur_.tok = Tok::AndOp;
        i_ += 2;
        return;
      }
      throw ParseError("unknown token '/'", i_);
    }
    if (c == '\\') {
      // longest match among \/  \/.  \\/  \\/.
      if (src_.compare(i_, 4, "\\\\/.") == 0) { cur_.tok = Tok::LGorOp; i_ += 4; return; }
      if (src_.compare(i_, 3, "\\\\/") == 0) { cur_.tok = Tok::GorOp; i_ += 3; return; }
      if (src_.compare(i_, 3, "\\/.") == 0) { cur_.tok = Tok::DorOp; i_ += 3; return; }
      if (src_.compare(i_, 2, "\\/") == 0) { cur_.tok = Tok::VeeOp; i_ += 2; return; }
      throw ParseError("unknown token '\\'", i_);
    }
    if (c == '_') {
      size_t j = i_ + 1;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      if (j == i_ + 1) throw ParseError("expected digits after '_'", i_);
      cur_.tok = Tok::Hole;
      cur_.hole = std::stoi(std::string(src_.substr(i_ + 1, j - i_ - 1)));
      i_ = j;
      return;
    }
    if (c >= 'a' && c <= 'z') {
      size_t j = i_;
      while (j < src_.size() &&
             (std::islower(static_cast<unsigned char>(src_[j])) ||
              std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      std::string word(src_.substr(i_, j - i_));
      i_ = j;
      if (word == "bot") cur_.tok = Tok::Bot;
      else if (word == "top") cur_.tok = Tok::Top;
      else if (word == "ne") cur_.tok = Tok::NE;
      else if (word == "nbot") cur_.tok = Tok::NBot;
      else if (word == "might") cur_.tok = Tok::Might;
      else if (word == "dia") cur_.tok = Tok::Dia;
      else if (word == "box") cur_.tok = Tok::Box;
      else if (word == "gdia") cur_.tok = Tok::GDia;
      else if (word == "gbox") cur_.tok = Tok::GBox;
      else {
        cur_.tok = Tok::Atom;
        cur_.text = std::move(word);
      }
      return;
    }
    throw ParseError(std::string("unknown token '") + c + "'", i_);
  }

  std::string_view src_;
  size_t i_ = 0;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Formula parse() {
    Formula f = parse_impl();
    if (lex_.peek().tok != Tok::End)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    return f;
  }

 private:
  // ->, right-associative, loosest
  Formula parse_impl() {
    Formula lhs = parse_disj();
    if (lex_.peek().tok == Tok::ImplOp) {
      lex_.take();
      return f_impl(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  static std::optional<Kind> disj_kind(Tok t) {
    switch (t) {
      case Tok::VeeOp: return Kind::SplitOr;
      case Tok::DorOp: return Kind::LaxSplitOr;
      case Tok::GorOp: return Kind::GlobalOr;
      case Tok::LGorOp: return Kind::LaxGlobalOr;
      default: return std::nullopt;
    }
  }

  Formula parse_disj() {
    Formula lhs = parse_conj();
    auto k = disj_kind(lex_.peek().tok);
    if (!k) return lhs;
    // chain of one flavor only; a different flavor at the same level is an error
    while (true) {
      auto k2 = disj_kind(lex_.peek().tok);
      if (!k2) break;
      size_t pos = lex_.peek().pos;
      if (*k2 != *k)
        throw ParseError("mixing disjunction flavors requires parentheses", pos);
      lex_.take();
      lhs = make_binary(*k, std::move(lhs), parse_conj());
    }
    return lhs;
  }

  Formula parse_conj() {
    Formula lhs = parse_unary();
    while (lex_.peek().tok == Tok::AndOp) {
      lex_.take();
      lhs = f_and(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (lex_.peek().tok) {
      case Tok::Tilde: lex_.take(); return f_neg(parse_unary());
      case Tok::Bang: lex_.take(); return f_impl(parse_unary(), f_bot());
      case Tok::Might: lex_.take(); return f_might(parse_unary());
      case Tok::Dia: lex_.take(); return f_dia(parse_unary());
      case Tok::Box: lex_.take(); return f_box(parse_unary());
      case Tok::GDia: lex_.take(); return f_gdia(parse_unary());
      case Tok::GBox: lex_.take(); return f_gbox(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    Token t = lex_.take();
    switch (t.tok) {
      case Tok::Atom: return make_atom(t.text);
      case Tok::Hole: return make_hole(t.hole);
      case Tok::Bot: return f_bot();
      case Tok::Top: return f_top();
      case Tok::NE: return f_ne();
      case Tok::NBot: return f_nbot();
      case Tok::LParen: {
        Formula f = parse_impl();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::DepOpen: return parse_dep(t.pos);
      default:
        throw ParseError("unexpected token", t.pos);
    }
  }

  Formula parse_dep(size_t open_pos) {
    std::vector<Formula> items;
    items.push_back(parse_impl());
    bool saw_semi = false;
    while (true) {
      Token t = lex_.take();
      if (t.tok == Tok::RParen) break;
      if (t.tok == Tok::Semi) {
        if (saw_semi) throw ParseError("duplicate ';' in dependence atom", t.pos);
        saw_semi = true;
        items.push_back(parse_impl());
      } else if (t.tok == Tok::Comma) {
        if (saw_semi) throw ParseError("',' after ';' in dependence atom", t.pos);
        items.push_back(parse_impl());
      } else {
        throw ParseError("expected ',', ';' or ')' in dependence atom", t.pos);
      }
    }
    if (!saw_semi && items.size() != 1)
      throw ParseError("dependence atom needs ';' before its head", open_pos);
    Formula head = items.back();
    items.pop_back();
    return make_dep(std::move(items), std::move(head));
  }

  void expect(Tok t, const char* what) {
    if (lex_.peek().tok != t)
      throw ParseError(std::string("expected ") + what, lex_.peek().pos);
    lex_.take();
  }

  Lexer lex_;
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace teamlogic
