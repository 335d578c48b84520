#include "anita/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace anita {

// ---------- Terms ----------

Term Term::var(std::string name) {
  Term t;
  t.kind_ = Kind::Var;
  t.name_ = std::move(name);
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::Compound;
  t.name_ = std::move(functor);
  t.args_ = std::move(args);
  return t;
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (is_var()) {
    out.insert(name_);
    return;
  }
  for (const auto& a : args_) a.collect_vars(out);
}

bool Term::contains_var(const std::string& v) const {
  if (is_var()) return name_ == v;
  return std::ranges::any_of(args_, [&](const Term& a) { return a.contains_var(v); });
}

// ---------- Formulas ----------

struct Formula::Node {
  Connective kind;
  std::string name;  // predicate or bound variable
  std::vector<Term> args;
  std::vector<Formula> children;
};

namespace {
const std::string kEmpty;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Connective::Atom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Connective::Not, {}, {}, {std::move(operand)}}));
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  assert(c == Connective::And || c == Connective::Or || c == Connective::Implies);
  return Formula(std::make_shared<const Node>(Node{c, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::quantified(Connective c, std::string var, Formula body) {
  assert(c == Connective::ForAll || c == Connective::Exists);
  return Formula(std::make_shared<const Node>(Node{c, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return binary(Connective::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return binary(Connective::Or, std::move(lhs), std::move(rhs));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return binary(Connective::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::forall(std::string var, Formula body) {
  return quantified(Connective::ForAll, std::move(var), std::move(body));
}
Formula Formula::exists(std::string var, Formula body) {
  return quantified(Connective::Exists, std::move(var), std::move(body));
}

Connective Formula::kind() const { return node_->kind; }

bool Formula::is_binary() const {
  auto k = kind();
  return k == Connective::And || k == Connective::Or || k == Connective::Implies;
}

bool Formula::is_quantifier() const {
  auto k = kind();
  return k == Connective::ForAll || k == Connective::Exists;
}

const std::string& Formula::predicate() const {
  assert(is_atom());
  return node_->name;
}
std::span<const Term> Formula::args() const { return node_->args; }

const Formula& Formula::operand() const {
  assert(kind() == Connective::Not);
  return node_->children[0];
}
const Formula& Formula::lhs() const {
  assert(is_binary());
  return node_->children[0];
}
const Formula& Formula::rhs() const {
  assert(is_binary());
  return node_->children[1];
}
const std::string& Formula::variable() const {
  assert(is_quantifier());
  return node_->name;
}
const Formula& Formula::body() const {
  assert(is_quantifier());
  return node_->children[0];
}

std::size_t Formula::size() const {
  if (is_atom()) return 0;
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth() + 1);
  return d;
}

namespace {

void collect_all_vars(const Formula& phi, std::set<std::string>& out) {
  switch (phi.kind()) {
    case Connective::Atom:
      for (const auto& t : phi.args()) t.collect_vars(out);
      return;
    case Connective::Not:
      collect_all_vars(phi.operand(), out);
      return;
    case Connective::ForAll:
    case Connective::Exists:
      out.insert(phi.variable());
      collect_all_vars(phi.body(), out);
      return;
    default:
      collect_all_vars(phi.lhs(), out);
      collect_all_vars(phi.rhs(), out);
  }
}

}  // namespace

std::set<std::string> Formula::all_vars() const {
  std::set<std::string> out;
  collect_all_vars(*this, out);
  return out;
}

bool Formula::mentions_var(const std::string& v) const {
  switch (kind()) {
    case Connective::Atom:
      return std::ranges::any_of(args(), [&](const Term& t) { return t.contains_var(v); });
    case Connective::Not:
      return operand().mentions_var(v);
    case Connective::ForAll:
    case Connective::Exists:
      return variable() == v || body().mentions_var(v);
    default:
      return lhs().mentions_var(v) || rhs().mentions_var(v);
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.args == y.args && x.children == y.children;
}

namespace {

int compare_terms(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name())) return c;
  auto aa = a.args();
  auto ba = b.args();
  if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
  for (std::size_t i = 0; i < aa.size(); ++i)
    if (int c = compare_terms(aa[i], ba[i])) return c;
  return 0;
}

int compare_formulas(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Connective::Atom: {
      if (int c = a.predicate().compare(b.predicate())) return c;
      auto aa = a.args();
      auto ba = b.args();
      if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
      for (std::size_t i = 0; i < aa.size(); ++i)
        if (int c = compare_terms(aa[i], ba[i])) return c;
      return 0;
    }
    case Connective::Not:
      return compare_formulas(a.operand(), b.operand());
    case Connective::ForAll:
    case Connective::Exists:
      if (int c = a.variable().compare(b.variable())) return c;
      return compare_formulas(a.body(), b.body());
    default:
      if (int c = compare_formulas(a.lhs(), b.lhs())) return c;
      return compare_formulas(a.rhs(), b.rhs());
  }
}

}  // namespace

bool operator<(const Formula& a, const Formula& b) { return compare_formulas(a, b) < 0; }

// ---------- Errors ----------

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column),
      detail_(message) {}

// ---------- Free variables and substitution ----------

namespace {

void collect_free(const Formula& phi, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (phi.kind()) {
    case Connective::Atom: {
      std::set<std::string> vs;
      for (const auto& t : phi.args()) t.collect_vars(vs);
      for (const auto& v : vs)
        if (!bound.contains(v)) out.insert(v);
      return;
    }
    case Connective::Not:
      collect_free(phi.operand(), bound, out);
      return;
    case Connective::ForAll:
    case Connective::Exists: {
      bool inserted = bound.insert(phi.variable()).second;
      collect_free(phi.body(), bound, out);
      if (inserted) bound.erase(phi.variable());
      return;
    }
    default:
      collect_free(phi.lhs(), bound, out);
      collect_free(phi.rhs(), bound, out);
  }
}

// Name of the first quantifier variable that would capture a variable of
// `t_vars` at a free occurrence of x, if any.
std::optional<std::string> find_capture(const Formula& phi, const std::string& x,
                                        const std::set<std::string>& t_vars,
                                        std::vector<std::string>& binders) {
  switch (phi.kind()) {
    case Connective::Atom: {
      bool occurs = std::ranges::any_of(phi.args(), [&](const Term& t) { return t.contains_var(x); });
      if (!occurs) return std::nullopt;
      for (const auto& b : binders)
        if (t_vars.contains(b)) return b;
      return std::nullopt;
    }
    case Connective::Not:
      return find_capture(phi.operand(), x, t_vars, binders);
    case Connective::ForAll:
    case Connective::Exists: {
      if (phi.variable() == x) return std::nullopt;
      binders.push_back(phi.variable());
      auto r = find_capture(phi.body(), x, t_vars, binders);
      binders.pop_back();
      return r;
    }
    default:
      if (auto r = find_capture(phi.lhs(), x, t_vars, binders)) return r;
      return find_capture(phi.rhs(), x, t_vars, binders);
  }
}

Term substitute_term(const Term& term, const std::string& x, const Term& t) {
  if (term.is_var()) return term.name() == x ? t : term;
  std::vector<Term> args;
  args.reserve(term.args().size());
  for (const auto& a : term.args()) args.push_back(substitute_term(a, x, t));
  return Term::compound(term.name(), std::move(args));
}

Formula substitute(const Formula& phi, const std::string& x, const Term& t) {
  switch (phi.kind()) {
    case Connective::Atom: {
      std::vector<Term> args;
      args.reserve(phi.args().size());
      for (const auto& a : phi.args()) args.push_back(substitute_term(a, x, t));
      return Formula::atom(phi.predicate(), std::move(args));
    }
    case Connective::Not:
      return Formula::negation(substitute(phi.operand(), x, t));
    case Connective::ForAll:
    case Connective::Exists:
      if (phi.variable() == x) return phi;
      return Formula::quantified(phi.kind(), phi.variable(), substitute(phi.body(), x, t));
    default:
      return Formula::binary(phi.kind(), substitute(phi.lhs(), x, t), substitute(phi.rhs(), x, t));
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& phi) {
  std::set<std::string> bound, out;
  collect_free(phi, bound, out);
  return out;
}

bool is_free(const Formula& phi, const std::string& x) { return free_vars(phi).contains(x); }

bool is_substitutable(const Formula& phi, const std::string& x, const Term& t) {
  std::set<std::string> t_vars;
  t.collect_vars(t_vars);
  std::vector<std::string> binders;
  return !find_capture(phi, x, t_vars, binders).has_value();
}

Formula apply_substitution(const Formula& phi, const std::string& x, const Term& t) {
  std::set<std::string> t_vars;
  t.collect_vars(t_vars);
  std::vector<std::string> binders;
  if (auto captured = find_capture(phi, x, t_vars, binders)) {
    throw NotSubstitutable(*captured, "term " + format_term(t) + " is not substitutable for " + x + " in " +
                                          format_formula(phi) + ": " + *captured +
                                          " would be captured by a quantifier");
  }
  return substitute(phi, x, t);
}

// ---------- Instance matching ----------

namespace {

struct Matcher {
  const std::string& x;
  std::optional<Term> witness;

  bool terms(const Term& pattern, const Term& cand, bool x_bound) {
    if (pattern.is_var()) {
      if (pattern.name() == x && !x_bound) {
        if (!witness) {
          witness = cand;
          return true;
        }
        return *witness == cand;
      }
      return cand.is_var() && cand.name() == pattern.name();
    }
    if (cand.is_var() || cand.name() != pattern.name() || cand.args().size() != pattern.args().size())
      return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
      if (!terms(pattern.args()[i], cand.args()[i], x_bound)) return false;
    return true;
  }

  bool formulas(const Formula& pattern, const Formula& cand, bool x_bound) {
    if (pattern.kind() != cand.kind()) return false;
    switch (pattern.kind()) {
      case Connective::Atom: {
        if (pattern.predicate() != cand.predicate() || pattern.args().size() != cand.args().size())
          return false;
        for (std::size_t i = 0; i < pattern.args().size(); ++i)
          if (!terms(pattern.args()[i], cand.args()[i], x_bound)) return false;
        return true;
      }
      case Connective::Not:
        return formulas(pattern.operand(), cand.operand(), x_bound);
      case Connective::ForAll:
      case Connective::Exists:
        if (pattern.variable() != cand.variable()) return false;
        return formulas(pattern.body(), cand.body(), x_bound || pattern.variable() == x);
      default:
        return formulas(pattern.lhs(), cand.lhs(), x_bound) && formulas(pattern.rhs(), cand.rhs(), x_bound);
    }
  }
};

}  // namespace

MatchResult match_instance(const Formula& phi, const std::string& x, const Formula& candidate,
                           bool check_capture) {
  Matcher m{x, std::nullopt};
  if (!m.formulas(phi, candidate, false)) return MatchResult::no_match();
  if (!m.witness) return MatchResult::any_term();
  if (check_capture && !is_substitutable(phi, x, *m.witness)) return MatchResult::no_match();
  return MatchResult::witness(std::move(*m.witness));
}

// ---------- Formatting ----------

namespace {

int precedence(Connective c) {
  switch (c) {
    case Connective::Implies:
      return 1;
    case Connective::Or:
      return 2;
    case Connective::And:
      return 3;
    case Connective::Not:
    case Connective::ForAll:
    case Connective::Exists:
      return 4;
    case Connective::Atom:
      return 5;
  }
  return 5;
}

struct Symbols {
  const char* neg;
  const char* conj;
  const char* disj;
  const char* impl;
  const char* all;
  const char* ex;
};

constexpr Symbols kAscii{"~", "&", "|", "->", "A", "E"};
constexpr Symbols kUnicode{"¬", " ∧ ", " ∨ ", " → ", "∀", "∃"};
constexpr Symbols kLatex{"\\lnot ", "\\land ", "\\lor ", "\\rightarrow ", "\\forall ", "\\exists "};

const Symbols& symbols(Notation n) {
  switch (n) {
    case Notation::Unicode:
      return kUnicode;
    case Notation::Latex:
      return kLatex;
    default:
      return kAscii;
  }
}

void write_formula(std::ostream& os, const Formula& phi, Notation n);

void write_wrapped(std::ostream& os, const Formula& phi, Notation n, bool parens) {
  if (parens) os << '(';
  write_formula(os, phi, n);
  if (parens) os << ')';
}

void write_formula(std::ostream& os, const Formula& phi, Notation n) {
  const auto& sym = symbols(n);
  switch (phi.kind()) {
    case Connective::Atom:
      os << phi.predicate();
      if (!phi.args().empty()) {
        os << '(';
        for (std::size_t i = 0; i < phi.args().size(); ++i) {
          if (i) os << ',';
          os << format_term(phi.args()[i]);
        }
        os << ')';
      }
      return;
    case Connective::Not:
      os << sym.neg;
      write_wrapped(os, phi.operand(), n, precedence(phi.operand().kind()) < 4);
      return;
    case Connective::ForAll:
    case Connective::Exists:
      os << (phi.kind() == Connective::ForAll ? sym.all : sym.ex) << phi.variable() << ' ';
      write_wrapped(os, phi.body(), n, precedence(phi.body().kind()) < 4);
      return;
    default: {
      int p = precedence(phi.kind());
      const char* op = phi.kind() == Connective::And  ? sym.conj
                       : phi.kind() == Connective::Or ? sym.disj
                                                      : sym.impl;
      bool lparen = precedence(phi.lhs().kind()) <= p;
      bool rparen = precedence(phi.rhs().kind()) < p;
      // LaTeX output brackets mixed binary operands, as in textbook trees
      if (n == Notation::Latex) {
        lparen = precedence(phi.lhs().kind()) < 4;
        rparen = precedence(phi.rhs().kind()) < 4 && phi.rhs().kind() != phi.kind();
      }
      write_wrapped(os, phi.lhs(), n, lparen);
      os << op;
      write_wrapped(os, phi.rhs(), n, rparen);
    }
  }
}

}  // namespace

std::string format_term(const Term& t) {
  if (t.is_var()) return t.name();
  std::string s = t.name() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) s += ',';
    s += format_term(t.args()[i]);
  }
  return s + ")";
}

std::string format_formula(const Formula& phi, Notation notation) {
  std::ostringstream os;
  write_formula(os, phi, notation);
  return os.str();
}

std::string format_signed(const SignedFormula& sf, Notation notation) {
  const char* sep = notation == Notation::Latex ? "~" : " ";
  return std::string(1, sign_char(sf.sign)) + sep + format_formula(sf.formula, notation);
}

std::string format_sequent(const Sequent& seq, Notation notation) {
  std::string s;
  for (std::size_t i = 0; i < seq.premises.size(); ++i) {
    if (i) s += ", ";
    s += format_formula(seq.premises[i], notation);
  }
  const char* turnstile = notation == Notation::Ascii     ? "|-"
                          : notation == Notation::Unicode ? "⊢"
                                                          : "\\vdash";
  if (!s.empty()) s += ' ';
  return s + turnstile + " " + format_formula(seq.conclusion, notation);
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << format_term(t); }
std::ostream& operator<<(std::ostream& os, const Formula& phi) { return os << format_formula(phi); }
std::ostream& operator<<(std::ostream& os, const SignedFormula& sf) { return os << format_signed(sf); }

}  // namespace anita
