#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "weaklog/formula.hpp"

namespace weaklog {

struct parse_error : std::runtime_error {
  size_t pos;
  parse_error(const std::string& msg, size_t p)
      : std::runtime_error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

// Concrete syntax:
//   atoms p0 p1 ...; constant bot; metavariables _name (templates only)
//   ~f        sugar for f -> bot            (binds tightest)
//   f & g                                   (left associative)
//   f | g, f * g                            (shared level, left associative)
//   f -> g                                  (right associative, weakest)
//   f <-> g   sugar for (f->g)&(g->f)       (below ->, non-associative)
// Stored formulas are desugared; the printer re-introduces ~ only.
namespace detail {

enum class Tok { lp, rp, amp, pipe, star, arrow, iff, tilde, atom, bot, meta, eq, end };

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  Tok tok = Tok::end;
  int atom_value = -1;
  std::string meta_name;
  size_t tok_pos = 0;

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_pos = pos_;
    if (pos_ >= text_.size()) {
      tok = Tok::end;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': ++pos_; tok = Tok::lp; return;
      case ')': ++pos_; tok = Tok::rp; return;
      case '&': ++pos_; tok = Tok::amp; return;
      case '|': ++pos_; tok = Tok::pipe; return;
      case '*': ++pos_; tok = Tok::star; return;
      case '~': ++pos_; tok = Tok::tilde; return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          tok = Tok::arrow;
          return;
        }
        throw parse_error("expected '->'", pos_);
      case '<':
        if (pos_ + 3 <= text_.size() && text_.substr(pos_, 3) == "<->") {
          pos_ += 3;
          tok = Tok::iff;
          return;
        }
        throw parse_error("expected '<->'", pos_);
      default: break;
    }
    if (c == 'p' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      size_t j = pos_ + 1;
      long v = 0;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
        v = v * 10 + (text_[j] - '0');
        if (v > 1'000'000) throw parse_error("atom index too large", pos_);
        ++j;
      }
      atom_value = static_cast<int>(v);
      pos_ = j;
      tok = Tok::atom;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = pos_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      std::string word(text_.substr(pos_, j - pos_));
      pos_ = j;
      if (word == "bot") {
        tok = Tok::bot;
        return;
      }
      if (word[0] == '_' && word.size() > 1) {
        tok = Tok::meta;
        meta_name = word.substr(1);
        return;
      }
      throw parse_error("unexpected token '" + word + "'", tok_pos);
    }
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig, bool allow_meta)
      : lex_(text), sig_(sig), allow_meta_(allow_meta) {}

  Formula parse_formula_all() {
    Formula f = parse_iff();
    expect_end();
    return f;
  }

  Equation parse_equation_all() {
    Formula lhs = parse_iff();
    if (lex_.tok != Tok::tilde)
      throw parse_error("expected '~' between the sides of an equation", lex_.tok_pos);
    lex_.advance();
    Formula rhs = parse_iff();
    expect_end();
    return {lhs, rhs};
  }

 private:
  void expect_end() {
    if (lex_.tok != Tok::end) throw parse_error("trailing input", lex_.tok_pos);
  }

  Formula mk(const char* name, Formula a, Formula b, size_t pos) {
    if (!sig_.has(name))
      throw parse_error(std::string("unknown connective for this signature: '") + name + "'", pos);
    return Formula::app(name, {std::move(a), std::move(b)});
  }

  Formula parse_iff() {
    size_t pos = lex_.tok_pos;
    Formula l = parse_imp();
    if (lex_.tok == Tok::iff) {
      lex_.advance();
      Formula r = parse_imp();
      if (lex_.tok == Tok::iff) throw parse_error("chained '<->' needs parentheses", lex_.tok_pos);
      return mk("and", mk("imp", l, r, pos), mk("imp", r, l, pos), pos);
    }
    return l;
  }

  Formula parse_imp() {
    size_t pos = lex_.tok_pos;
    Formula l = parse_or();
    if (lex_.tok == Tok::arrow) {
      lex_.advance();
      Formula r = parse_imp();  // right associative
      return mk("imp", std::move(l), std::move(r), pos);
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (lex_.tok == Tok::pipe || lex_.tok == Tok::star) {
      const char* name = lex_.tok == Tok::pipe ? "or" : "tensor";
      size_t pos = lex_.tok_pos;
      lex_.advance();
      Formula r = parse_and();
      l = mk(name, std::move(l), std::move(r), pos);
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (lex_.tok == Tok::amp) {
      size_t pos = lex_.tok_pos;
      lex_.advance();
      Formula r = parse_unary();
      l = mk("and", std::move(l), std::move(r), pos);
    }
    return l;
  }

  Formula parse_unary() {
    if (lex_.tok == Tok::tilde) {
      size_t pos = lex_.tok_pos;
      lex_.advance();
      Formula inner = parse_unary();
      if (!sig_.has("bot") || !sig_.has("imp"))
        throw parse_error("'~' requires imp and bot in the signature", pos);
      return limp(std::move(inner), lbot());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    switch (lex_.tok) {
      case Tok::lp: {
        lex_.advance();
        Formula f = parse_iff();
        if (lex_.tok != Tok::rp) throw parse_error("expected ')'", lex_.tok_pos);
        lex_.advance();
        return f;
      }
      case Tok::atom: {
        Formula f = Formula::atom(lex_.atom_value);
        lex_.advance();
        return f;
      }
      case Tok::bot: {
        size_t pos = lex_.tok_pos;
        if (!sig_.has("bot")) throw parse_error("'bot' not in signature", pos);
        lex_.advance();
        return lbot();
      }
      case Tok::meta: {
        if (!allow_meta_)
          throw parse_error("metavariable '_" + lex_.meta_name + "' not allowed here", lex_.tok_pos);
        Formula f = Formula::meta(lex_.meta_name);
        lex_.advance();
        return f;
      }
      default:
        throw parse_error("expected a formula", lex_.tok_pos);
    }
  }

  Lexer lex_;
  const Signature& sig_;
  bool allow_meta_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, const Signature& sig, bool allow_meta = false) {
  return detail::Parser(text, sig, allow_meta).parse_formula_all();
}

inline Equation parse_equation(std::string_view text, const Signature& sig, bool allow_meta = false) {
  return detail::Parser(text, sig, allow_meta).parse_equation_all();
}

namespace detail {

// Binding strengths for minimal-parenthesis printing; an imp with bot on the
// right prints as ~ and takes the ~ strength.
inline int print_prec(const Formula& f) {
  if (!f.is_app() || f.args().empty()) return 100;
  const std::string& n = f.name();
  if (n == "imp") {
    if (f.args()[1].is_app() && f.args()[1].name() == "bot") return 40;  // prints as ~
    return 10;
  }
  if (n == "or" || n == "tensor") return 20;
  if (n == "and") return 30;
  return 100;  // unknown connectives print functionally
}

inline void print_to(const Formula& f, int min_prec, std::string& out) {
  int prec = print_prec(f);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case NodeKind::atom:
      out += 'p';
      out += std::to_string(f.atom_index());
      break;
    case NodeKind::meta:
      out += '_';
      out += f.name();
      break;
    case NodeKind::app: {
      const std::string& n = f.name();
      if (f.args().empty()) {
        out += n;
      } else if (n == "imp" && f.args()[1].is_app() && f.args()[1].name() == "bot") {
        out += '~';
        print_to(f.args()[0], 40, out);
      } else if (n == "imp") {
        print_to(f.args()[0], 11, out);
        out += " -> ";
        print_to(f.args()[1], 10, out);
      } else if (n == "and" || n == "or" || n == "tensor") {
        int level = n == "and" ? 30 : 20;
        const char* op = n == "and" ? " & " : (n == "or" ? " | " : " * ");
        print_to(f.args()[0], level, out);
        out += op;
        print_to(f.args()[1], level + 1, out);
      } else {
        out += n;
        out += '(';
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          print_to(f.args()[i], 0, out);
        }
        out += ')';
      }
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace detail

// Minimal-parenthesis rendering; parse(to_string(f)) rebuilds f exactly.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_to(f, 0, out);
  return out;
}

inline std::string to_string(const Equation& e) {
  return to_string(e.lhs) + " ~ " + to_string(e.rhs);
}

}  // namespace weaklog
