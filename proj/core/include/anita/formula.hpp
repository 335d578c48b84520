#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anita {

/// A first-order term: a variable, or a function symbol applied to terms.
/// Zero-arity compounds are constants; the parser never produces them since
/// every lowercase identifier without arguments reads as a variable.
class Term {
 public:
  enum class Kind { Var, Compound };

  static Term var(std::string name);
  static Term compound(std::string functor, std::vector<Term> args = {});

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  const std::string& name() const { return name_; }
  std::span<const Term> args() const { return args_; }

  /// Collects every variable occurring in the term.
  void collect_vars(std::set<std::string>& out) const;
  bool contains_var(const std::string& v) const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Kind kind_ = Kind::Var;
  std::string name_;
  std::vector<Term> args_;
};

enum class Connective { Atom, Not, And, Or, Implies, ForAll, Exists };

/// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula binary(Connective c, Formula lhs, Formula rhs);
  static Formula quantified(Connective c, std::string var, Formula body);

  Connective kind() const;
  bool is_atom() const { return kind() == Connective::Atom; }
  bool is_binary() const;
  bool is_quantifier() const;

  // Atom accessors.
  const std::string& predicate() const;
  std::span<const Term> args() const;

  // Not: operand(). Binary: lhs()/rhs(). Quantifier: variable()/body().
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const std::string& variable() const;
  const Formula& body() const;

  /// Number of connectives and quantifiers.
  std::size_t size() const;
  /// Nesting depth; atoms have depth 0.
  std::size_t depth() const;
  /// Every variable occurring anywhere, free or bound, including quantifier
  /// variables.
  std::set<std::string> all_vars() const;
  bool mentions_var(const std::string& v) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Sign { True, False };

inline char sign_char(Sign s) { return s == Sign::True ? 'T' : 'F'; }
inline Sign opposite(Sign s) { return s == Sign::True ? Sign::False : Sign::True; }

struct SignedFormula {
  Sign sign;
  Formula formula;

  friend bool operator==(const SignedFormula&, const SignedFormula&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

/// Thrown by apply_substitution when a variable of the term would be captured.
class NotSubstitutable : public std::runtime_error {
 public:
  NotSubstitutable(const std::string& capturing_var, const std::string& message)
      : std::runtime_error(message), capturing_var_(capturing_var) {}
  const std::string& capturing_var() const { return capturing_var_; }

 private:
  std::string capturing_var_;
};

/// Parses the ASCII formula syntax: `~ & | ->`, `Ax`/`Ex` quantifiers,
/// parentheses. Precedence from tightest: ~, A, E, &, |, -> (all binary
/// connectives associate to the right). `line` and `first_column` position
/// the text inside a larger document for error reporting.
Formula parse_formula(std::string_view text, int line = 1, int first_column = 1);

struct Sequent {
  std::vector<Formula> premises;
  Formula conclusion;

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

/// Parses `P1, P2, ... |- C` (premises may be empty).
Sequent parse_sequent(std::string_view text);

std::set<std::string> free_vars(const Formula& phi);
bool is_free(const Formula& phi, const std::string& x);
bool is_substitutable(const Formula& phi, const std::string& x, const Term& t);
/// phi with every free occurrence of x replaced by t.
Formula apply_substitution(const Formula& phi, const std::string& x, const Term& t);

class MatchResult {
 public:
  enum class Kind { Witness, AnyTerm, NoMatch };

  static MatchResult witness(Term t) { return MatchResult(Kind::Witness, std::move(t)); }
  static MatchResult any_term() { return MatchResult(Kind::AnyTerm, std::nullopt); }
  static MatchResult no_match() { return MatchResult(Kind::NoMatch, std::nullopt); }

  Kind kind() const { return kind_; }
  const Term& term() const { return *term_; }

  friend bool operator==(const MatchResult&, const MatchResult&) = default;

 private:
  MatchResult(Kind k, std::optional<Term> t) : kind_(k), term_(std::move(t)) {}
  Kind kind_;
  std::optional<Term> term_;
};

/// Finds t such that phi[x := t] == candidate. With check_capture false the
/// substitutability side condition is skipped, which lets callers tell a
/// shape mismatch apart from a capture.
MatchResult match_instance(const Formula& phi, const std::string& x, const Formula& candidate,
                           bool check_capture = true);

enum class Notation { Ascii, Unicode, Latex };

std::string format_term(const Term& t);
std::string format_formula(const Formula& phi, Notation notation = Notation::Ascii);
std::string format_signed(const SignedFormula& sf, Notation notation = Notation::Ascii);
std::string format_sequent(const Sequent& seq, Notation notation = Notation::Ascii);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Formula& phi);
std::ostream& operator<<(std::ostream& os, const SignedFormula& sf);

}  // namespace anita
