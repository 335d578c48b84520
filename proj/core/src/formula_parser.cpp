#include <cctype>
#include <vector>

#include "anita/formula.hpp"

namespace anita {
namespace {

enum class Tok { LParen, RParen, Comma, Not, And, Or, Implies, Turnstile, Upper, Lower, ForAll, Exists, End };

struct Token {
  Tok kind;
  std::string text;  // identifier, or quantified variable
  int column;
};

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::Comma:
      return "','";
    case Tok::Not:
      return "'~'";
    case Tok::And:
      return "'&'";
    case Tok::Or:
      return "'|'";
    case Tok::Implies:
      return "'->'";
    case Tok::Turnstile:
      return "'|-'";
    case Tok::Upper:
    case Tok::Lower:
      return "'" + t.text + "'";
    case Tok::ForAll:
      return "'A" + t.text + "'";
    case Tok::Exists:
      return "'E" + t.text + "'";
    case Tok::End:
      return "end of input";
  }
  return "token";
}

class Lexer {
 public:
  Lexer(std::string_view text, int line, int first_column) : text_(text), line_(line), base_(first_column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      int col = base_ + static_cast<int>(i);
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      switch (c) {
        case '(':
          out.push_back({Tok::LParen, {}, col});
          ++i;
          continue;
        case ')':
          out.push_back({Tok::RParen, {}, col});
          ++i;
          continue;
        case ',':
          out.push_back({Tok::Comma, {}, col});
          ++i;
          continue;
        case '~':
          out.push_back({Tok::Not, {}, col});
          ++i;
          continue;
        case '&':
          out.push_back({Tok::And, {}, col});
          ++i;
          continue;
        case '|':
          if (i + 1 < text_.size() && text_[i + 1] == '-') {
            out.push_back({Tok::Turnstile, {}, col});
            i += 2;
          } else {
            out.push_back({Tok::Or, {}, col});
            ++i;
          }
          continue;
        case '-':
          if (i + 1 < text_.size() && text_[i + 1] == '>') {
            out.push_back({Tok::Implies, {}, col});
            i += 2;
            continue;
          }
          throw ParseError(line_, col, "unknown token '-' (implication is written '->')");
        case '<':
          throw ParseError(line_, col, "the biconditional '<->' is not supported; write (A->B)&(B->A)");
        default:
          break;
      }
      if (is_upper(c) || is_lower(c)) {
        std::size_t j = i;
        while (j < text_.size() && is_ident_char(text_[j])) ++j;
        std::string word(text_.substr(i, j - i));
        if ((c == 'A' || c == 'E') && word.size() > 1 && is_lower(word[1])) {
          out.push_back({c == 'A' ? Tok::ForAll : Tok::Exists, word.substr(1), col});
        } else {
          out.push_back({is_upper(c) ? Tok::Upper : Tok::Lower, word, col});
        }
        i = j;
        continue;
      }
      throw ParseError(line_, col, std::string("unknown token '") + c + "'");
    }
    out.push_back({Tok::End, {}, base_ + static_cast<int>(text_.size())});
    return out;
  }

 private:
  std::string_view text_;
  int line_;
  int base_;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, int line) : toks_(std::move(tokens)), line_(line) {}

  Formula formula() { return implication(); }

  Sequent sequent() {
    std::vector<Formula> premises;
    if (peek().kind != Tok::Turnstile) {
      premises.push_back(formula());
      while (peek().kind == Tok::Comma) {
        next();
        premises.push_back(formula());
      }
    }
    if (peek().kind != Tok::Turnstile) fail(peek(), "expected ',' or '|-' in sequent, found " + describe(peek()));
    next();
    Formula conclusion = formula();
    expect_end();
    return Sequent{std::move(premises), std::move(conclusion)};
  }

  void expect_end() {
    const Token& t = peek();
    if (t.kind == Tok::End) return;
    if (t.kind == Tok::RParen) fail(t, "unbalanced parenthesis: unexpected ')'");
    fail(t, "unexpected " + describe(t) + " after a complete formula");
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      next();
      return Formula::implication(std::move(lhs), operand_after("'->'", [this] { return implication(); }));
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (peek().kind == Tok::Or) {
      next();
      return Formula::disjunction(std::move(lhs), operand_after("'|'", [this] { return disjunction(); }));
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    if (peek().kind == Tok::And) {
      next();
      return Formula::conjunction(std::move(lhs), operand_after("'&'", [this] { return conjunction(); }));
    }
    return lhs;
  }

  template <class F>
  Formula operand_after(const char* op, F&& parse) {
    if (peek().kind == Tok::End || peek().kind == Tok::RParen || peek().kind == Tok::Comma ||
        peek().kind == Tok::Turnstile)
      fail(peek(), std::string("dangling connective: expected a formula after ") + op);
    return parse();
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return Formula::negation(operand_after("'~'", [this] { return unary(); }));
      case Tok::ForAll:
      case Tok::Exists: {
        Token q = next();
        const char* name = q.kind == Tok::ForAll ? "quantifier 'A" : "quantifier 'E";
        Formula body = operand_after((std::string(name) + q.text + "'").c_str(), [this] { return unary(); });
        return Formula::quantified(q.kind == Tok::ForAll ? Connective::ForAll : Connective::Exists, q.text,
                                   std::move(body));
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        next();
        Formula inner = operand_after("'('", [this] { return implication(); });
        if (peek().kind != Tok::RParen)
          fail(peek(), "unbalanced parenthesis: expected ')' before " + describe(peek()));
        next();
        return inner;
      }
      case Tok::Upper: {
        std::string pred = next().text;
        std::vector<Term> args;
        if (peek().kind == Tok::LParen) args = term_list();
        return Formula::atom(std::move(pred), std::move(args));
      }
      case Tok::Lower:
        fail(t, "lowercase identifier '" + t.text + "' cannot start a formula (atoms begin with a capital letter)");
      case Tok::End:
        fail(t, "expected a formula, found end of input");
      default:
        fail(t, "expected a formula, found " + describe(t));
    }
  }

  std::vector<Term> term_list() {
    next();  // '('
    std::vector<Term> args;
    args.push_back(term());
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(term());
    }
    if (peek().kind != Tok::RParen) fail(peek(), "unbalanced parenthesis: expected ')' in argument list");
    next();
    return args;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Lower) {
      std::string name = next().text;
      if (peek().kind == Tok::LParen) return Term::compound(std::move(name), term_list());
      return Term::var(std::move(name));
    }
    if (t.kind == Tok::Upper)
      fail(t, "'" + t.text + "' cannot be a term (variables and function symbols begin with a lowercase letter)");
    fail(t, "expected a term, found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace

Formula parse_formula(std::string_view text, int line, int first_column) {
  Parser p(Lexer(text, line, first_column).run(), line);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(Lexer(text, 1, 1).run(), 1);
  return p.sequent();
}

}  // namespace anita
