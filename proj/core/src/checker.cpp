#include "anita/checker.hpp"

#include <algorithm>
#include <set>

namespace anita {

std::string Countermodel::to_string() const {
  std::string s;
  for (const auto& [atom, sign] : assignments) {
    if (!s.empty()) s += ", ";
    s += "v(" + atom + ")=" + sign_char(sign);
  }
  return s;
}

std::string_view verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid:
      return "valid";
    case Verdict::Kind::Countermodel:
      return "countermodel";
    case Verdict::Kind::Incomplete:
      return "incomplete";
    case Verdict::Kind::Invalid:
      return "invalid";
  }
  return "invalid";
}

std::vector<SignedFormula> components(const SignedFormula& sf) {
  const Formula& f = sf.formula;
  constexpr Sign T = Sign::True;
  constexpr Sign F = Sign::False;
  switch (f.kind()) {
    case Connective::Not:
      return {{opposite(sf.sign), f.operand()}};
    case Connective::And:
      return {{sf.sign, f.lhs()}, {sf.sign, f.rhs()}};
    case Connective::Or:
      return {{sf.sign, f.lhs()}, {sf.sign, f.rhs()}};
    case Connective::Implies:
      // T: F lhs | T rhs (beta); F: T lhs, F rhs (alpha).
      return sf.sign == T ? std::vector<SignedFormula>{{F, f.lhs()}, {T, f.rhs()}}
                          : std::vector<SignedFormula>{{T, f.lhs()}, {F, f.rhs()}};
    default:
      return {};
  }
}

bool alpha_equivalent(const Formula& a, const Formula& b) {
  struct Walker {
    std::vector<std::pair<std::string, std::string>> env;

    // Index of the innermost binder for v on side `left`, or -1 if free.
    int lookup(const std::string& v, bool left) const {
      for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
        const auto& [l, r] = env[static_cast<std::size_t>(i)];
        if ((left ? l : r) == v) return i;
      }
      return -1;
    }

    bool terms(const Term& x, const Term& y) const {
      if (x.kind() != y.kind()) return false;
      if (x.is_var()) {
        int i = lookup(x.name(), true);
        int j = lookup(y.name(), false);
        return i == j && (i >= 0 || x.name() == y.name());
      }
      if (x.name() != y.name() || x.args().size() != y.args().size()) return false;
      for (std::size_t k = 0; k < x.args().size(); ++k)
        if (!terms(x.args()[k], y.args()[k])) return false;
      return true;
    }

    bool formulas(const Formula& x, const Formula& y) {
      if (x.kind() != y.kind()) return false;
      switch (x.kind()) {
        case Connective::Atom:
          if (x.predicate() != y.predicate() || x.args().size() != y.args().size()) return false;
          for (std::size_t k = 0; k < x.args().size(); ++k)
            if (!terms(x.args()[k], y.args()[k])) return false;
          return true;
        case Connective::Not:
          return formulas(x.operand(), y.operand());
        case Connective::ForAll:
        case Connective::Exists: {
          env.emplace_back(x.variable(), y.variable());
          bool ok = formulas(x.body(), y.body());
          env.pop_back();
          return ok;
        }
        default:
          return formulas(x.lhs(), y.lhs()) && formulas(x.rhs(), y.rhs());
      }
    }
  };
  Walker w;
  return w.formulas(a, b);
}

namespace {

bool contains(std::span<const SignedFormula> branch, const SignedFormula& sf) {
  return std::ranges::find(branch, sf) != branch.end();
}

bool is_ground_atom(const Formula& f) {
  return f.is_atom() && std::ranges::all_of(f.args(), [](const Term& t) {
           std::set<std::string> vs;
           t.collect_vars(vs);
           return vs.empty();
         });
}

bool has_complementary_pair(std::span<const SignedFormula> branch) {
  for (const auto& sf : branch)
    if (sf.sign == Sign::True && contains(branch, SignedFormula{Sign::False, sf.formula})) return true;
  return false;
}

std::string describe_line(const ProofScript& script, int n) {
  const auto& l = script.line(n);
  return l.is_bottom() ? std::string("@") : format_signed(l.signed_formula());
}

}  // namespace

bool saturated(std::span<const SignedFormula> branch) {
  for (const auto& sf : branch) {
    auto rule = rule_for(sf);
    if (!rule) continue;
    auto cls = rule_class(*rule);
    if (cls == RuleClass::Gamma || cls == RuleClass::Delta) return false;
    auto comps = components(sf);
    if (cls == RuleClass::Alpha) {
      if (!std::ranges::all_of(comps, [&](const SignedFormula& c) { return contains(branch, c); })) return false;
    } else {
      if (!std::ranges::any_of(comps, [&](const SignedFormula& c) { return contains(branch, c); })) return false;
    }
  }
  return true;
}

Countermodel extract_countermodel(std::span<const SignedFormula> branch) {
  if (!saturated(branch)) throw NotSaturated("branch is not saturated");
  Countermodel model;
  for (const auto& sf : branch) {
    if (!sf.formula.is_atom()) continue;
    if (!is_ground_atom(sf.formula))
      throw NotSaturated("atom " + format_formula(sf.formula) + " is not ground; no countermodel is extracted");
    auto key = format_formula(sf.formula);
    auto [it, inserted] = model.assignments.emplace(key, sf.sign);
    if (!inserted && it->second != sf.sign) throw NotSaturated("branch contains both T " + key + " and F " + key);
  }
  return model;
}

std::vector<SignedFormula> branch_formulas(const ProofScript& script, int leaf_block) {
  std::vector<SignedFormula> out;
  for (int n : branch_lines(script, leaf_block)) {
    const auto& l = script.line(n);
    if (!l.is_bottom()) out.push_back(l.signed_formula());
  }
  return out;
}

Sequent theorem_of(const ProofScript& script) {
  std::vector<Formula> premises;
  std::size_t i = 0;
  const auto& lines = script.lines;
  while (i < lines.size() && lines[i].justification.kind == Justification::Kind::Premise) {
    const auto& l = lines[i];
    if (l.depth != 0 || l.signed_formula().sign != Sign::True)
      throw BadInitialSegment("premise in line " + std::to_string(l.number) + " must be a top-level T formula");
    premises.push_back(l.signed_formula().formula);
    ++i;
  }
  if (i >= lines.size() || lines[i].justification.kind != Justification::Kind::Conclusion)
    throw BadInitialSegment("the premises must be followed by the conclusion line");
  const auto& c = lines[i];
  if (c.depth != 0 || c.signed_formula().sign != Sign::False)
    throw BadInitialSegment("conclusion in line " + std::to_string(c.number) + " must be a top-level F formula");
  for (std::size_t k = i + 1; k < lines.size(); ++k) {
    auto kind = lines[k].justification.kind;
    if (kind == Justification::Kind::Premise || kind == Justification::Kind::Conclusion)
      throw BadInitialSegment("line " + std::to_string(lines[k].number) + " restates a premise or conclusion");
  }
  return Sequent{std::move(premises), c.signed_formula().formula};
}

bool matches_sequent(const ProofScript& script, const Sequent& expected) {
  std::optional<Sequent> actual;
  try {
    actual = theorem_of(script);
  } catch (const BadInitialSegment&) {
    return false;
  }
  if (!(actual->conclusion == expected.conclusion)) return false;
  auto a = actual->premises;
  auto b = expected.premises;
  if (a.size() != b.size()) return false;
  std::ranges::sort(a, std::less<>{});
  std::ranges::sort(b, std::less<>{});
  return a == b;
}

ProofScript with_resolved_rules(ProofScript script, const CheckReport& report) {
  for (const auto& r : report.resolution) {
    auto& l = script.lines.at(static_cast<std::size_t>(r.line - 1));
    if (l.justification.kind == Justification::Kind::Rule && r.rule) l.justification.rule = r.rule;
  }
  return script;
}

// ---------- check ----------

namespace {

class Checker {
 public:
  explicit Checker(const ProofScript& s) : s_(s) {
    ancestors_.resize(static_cast<std::size_t>(s.line_count()) + 1);
    for (int n = 1; n <= s.line_count(); ++n) ancestors_[static_cast<std::size_t>(n)] = ancestors(s, n);
    resolved_.resize(static_cast<std::size_t>(s.line_count()) + 1);
    component_ok_.assign(static_cast<std::size_t>(s.line_count()) + 1, false);
  }

  CheckReport run() {
    CheckReport report;
    initial_segment();
    try {
      report.sequent = theorem_of(s_);
    } catch (const BadInitialSegment&) {
    }
    for (const auto& l : s_.lines) {
      if (l.justification.kind == Justification::Kind::Rule) rule_line(l);
      if (l.justification.kind == Justification::Kind::Closure) closure_line(l);
    }
    splits();
    std::ranges::stable_sort(diags_, [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    report.diagnostics = diags_;
    for (const auto& l : s_.lines) {
      LineResolution r{l.number, std::nullopt, l.justification.refs};
      if (resolved_[static_cast<std::size_t>(l.number)]) r.rule = resolved_[static_cast<std::size_t>(l.number)];
      report.resolution.push_back(std::move(r));
    }
    report.verdict = verdict();
    return report;
  }

 private:
  void diag(int line, const char* code, std::string message, std::vector<int> refs = {}) {
    diags_.push_back(Diagnostic{line, code, std::move(message), std::move(refs)});
  }

  bool is_ancestor(int m, int n) const {
    return std::ranges::binary_search(ancestors_[static_cast<std::size_t>(n)], m);
  }

  void initial_segment() {
    const auto& lines = s_.lines;
    if (lines.empty()) {
      diag(0, codes::kBadInitialSegment, "the proof is empty: it must start with its premises and conclusion");
      return;
    }
    std::size_t i = 0;
    for (; i < lines.size() && lines[i].justification.kind == Justification::Kind::Premise; ++i) {
      const auto& l = lines[i];
      if (l.depth != 0)
        diag(l.number, codes::kBadInitialSegment,
             "premise in line " + std::to_string(l.number) + " must not be inside a branch");
      if (l.signed_formula().sign != Sign::True)
        diag(l.number, codes::kBadInitialSegment,
             "premise in line " + std::to_string(l.number) + " must be labeled T, found " +
                 format_signed(l.signed_formula()));
    }
    if (i < lines.size() && lines[i].justification.kind == Justification::Kind::Conclusion) {
      const auto& l = lines[i];
      if (l.depth != 0)
        diag(l.number, codes::kBadInitialSegment,
             "conclusion in line " + std::to_string(l.number) + " must not be inside a branch");
      if (l.signed_formula().sign != Sign::False)
        diag(l.number, codes::kBadInitialSegment,
             "conclusion in line " + std::to_string(l.number) + " must be labeled F, found " +
                 format_signed(l.signed_formula()));
      ++i;
    } else {
      int at = i < lines.size() ? lines[i].number : lines.back().number;
      diag(at, codes::kBadInitialSegment,
           "expected the conclusion (justified 'conclusion') right after the premises in line " + std::to_string(at));
    }
    for (; i < lines.size(); ++i) {
      auto kind = lines[i].justification.kind;
      if (kind == Justification::Kind::Premise || kind == Justification::Kind::Conclusion)
        diag(lines[i].number, codes::kBadInitialSegment,
             std::string(kind == Justification::Kind::Premise ? "'pre'" : "'conclusion'") + " in line " +
                 std::to_string(lines[i].number) + " is only allowed in the initial tableau");
    }
  }

  // Validates a reference from line n to line m; returns false after
  // reporting if it is unusable.
  bool reference_ok(int n, int m) {
    if (m < 1 || m >= n) {
      diag(n, codes::kBadRef,
           "line " + std::to_string(n) + " cites line " + std::to_string(m) + ", which does not precede it",
           {m});
      return false;
    }
    if (!is_ancestor(m, n)) {
      diag(n, codes::kScopeViolation,
           "line " + std::to_string(m) + " is not on the branch of line " + std::to_string(n) +
               " and cannot be referenced from it",
           {m});
      return false;
    }
    if (s_.line(m).is_bottom()) {
      diag(n, codes::kBadRef, "line " + std::to_string(m) + " is a closure and cannot be cited", {m});
      return false;
    }
    return true;
  }

  std::string application(RuleId rule, int m, int n) const {
    return "The " + std::string(rule_title(rule)) + " rule (" + std::string(rule_name(rule)) +
           ") is not applied correctly to the signed formula " + describe_line(s_, m) + " in line " +
           std::to_string(m) + " to obtain " + describe_line(s_, n) + " in line " + std::to_string(n);
  }

  void rule_line(const ProofLine& l) {
    const int n = l.number;
    const auto& refs = l.justification.refs;
    if (refs.size() != 1) {
      diag(n, codes::kBadRef,
           "a rule application cites exactly one source line; line " + std::to_string(n) + " cites " +
               std::to_string(refs.size()),
           refs);
      return;
    }
    const int m = refs[0];
    if (!reference_ok(n, m)) return;
    const SignedFormula& src = s_.line(m).signed_formula();
    const SignedFormula& out = l.signed_formula();
    auto rule = rule_for(src);
    if (!rule) {
      diag(n, codes::kNotExpandable,
           "the signed formula " + format_signed(src) + " in line " + std::to_string(m) +
               " is a literal; no rule can be applied to it",
           {m});
      return;
    }
    resolved_[static_cast<std::size_t>(n)] = rule;
    if (l.justification.rule && *l.justification.rule != *rule) {
      diag(n, codes::kWrongRule,
           "line " + std::to_string(n) + " names rule " + std::string(rule_name(*l.justification.rule)) +
               ", but " + format_signed(src) + " in line " + std::to_string(m) + " is expanded by the " +
               std::string(rule_title(*rule)) + " rule (" + std::string(rule_name(*rule)) + ")",
           {m});
    }
    switch (rule_class(*rule)) {
      case RuleClass::Alpha:
      case RuleClass::Beta: {
        auto comps = components(src);
        if (std::ranges::find(comps, out) == comps.end()) {
          std::string expected;
          for (const auto& c : comps) expected += (expected.empty() ? "" : " or ") + format_signed(c);
          diag(n, codes::kWrongComponent, application(*rule, m, n) + ": expected " + expected, {m});
          return;
        }
        break;
      }
      case RuleClass::Gamma:
        if (!quantifier_instance(*rule, src, out, m, n, false)) return;
        break;
      case RuleClass::Delta:
        if (!quantifier_instance(*rule, src, out, m, n, true)) return;
        break;
    }
    component_ok_[static_cast<std::size_t>(n)] = true;
  }

  bool quantifier_instance(RuleId rule, const SignedFormula& src, const SignedFormula& out, int m, int n,
                           bool needs_fresh) {
    const Formula& body = src.formula.body();
    const std::string& x = src.formula.variable();
    std::string shape = format_formula(body) + " with " + x + " replaced by " + (needs_fresh ? "a new variable" : "a term");
    if (out.sign != src.sign) {
      diag(n, codes::kWrongComponent,
           application(rule, m, n) + ": the result must be labeled " + sign_char(src.sign), {m});
      return false;
    }
    auto match = match_instance(body, x, out.formula);
    if (match.kind() == MatchResult::Kind::NoMatch) {
      auto raw = match_instance(body, x, out.formula, false);
      if (raw.kind() == MatchResult::Kind::Witness) {
        diag(n, codes::kNotSubstitutable,
             application(rule, m, n) + ": the term " + format_term(raw.term()) + " is not substitutable for " + x +
                 " in " + format_formula(body),
             {m});
      } else {
        diag(n, codes::kWrongComponent, application(rule, m, n) + ": expected " + shape, {m});
      }
      return false;
    }
    if (!needs_fresh || match.kind() == MatchResult::Kind::AnyTerm) return true;
    const Term& t = match.term();
    if (!t.is_var()) {
      diag(n, codes::kWrongComponent,
           application(rule, m, n) + ": the term " + format_term(t) + " must be a new variable", {m});
      return false;
    }
    for (int k : ancestors_[static_cast<std::size_t>(n)]) {
      const auto& line = s_.line(k);
      if (line.is_bottom() || !line.signed_formula().formula.mentions_var(t.name())) continue;
      diag(n, codes::kNotFresh,
           application(rule, m, n) + ", because the term " + t.name() + " is not a new variable (see line " +
               std::to_string(k) + ")",
           {m, k});
      return false;
    }
    return true;
  }

  void closure_line(const ProofLine& l) {
    const int n = l.number;
    const auto& refs = l.justification.refs;
    if (refs.size() != 2) {
      diag(n, codes::kBadRef, "a closure cites exactly two lines", refs);
      return;
    }
    bool refs_ok = reference_ok(n, refs[0]);
    refs_ok = reference_ok(n, refs[1]) && refs_ok;
    if (refs_ok) {
      const auto& a = s_.line(refs[0]).signed_formula();
      const auto& b = s_.line(refs[1]).signed_formula();
      if (a.sign == b.sign || !(a.formula == b.formula)) {
        std::string msg = "lines " + std::to_string(refs[0]) + " and " + std::to_string(refs[1]) +
                          " do not close the branch: " + format_signed(a) + " and " + format_signed(b) +
                          " are not a pair T φ, F φ";
        if (a.sign != b.sign && alpha_equivalent(a.formula, b.formula))
          msg += " (the formulas differ only in bound variable names; branches close on identical formulas)";
        diag(n, codes::kNotClosedPair, std::move(msg), refs);
      }
    }
    const Block& b = s_.block(l.block);
    if (b.end_line != n || !b.is_leaf()) {
      diag(n, codes::kLinesAfterClosure,
           "the closure in line " + std::to_string(n) + " must be the last line of its branch", {});
    }
  }

  bool is_beta_line(int n) const {
    auto r = resolved_[static_cast<std::size_t>(n)];
    return r && rule_class(*r) == RuleClass::Beta;
  }

  void splits() {
    // Every beta application opens a branch.
    for (const auto& l : s_.lines) {
      if (!is_beta_line(l.number)) continue;
      const Block& b = s_.block(l.block);
      if (l.block == 0 || b.start_line != l.number) {
        auto rule = *resolved_[static_cast<std::size_t>(l.number)];
        diag(l.number, codes::kBadSplit,
             "the " + std::string(rule_title(rule)) + " rule (" + std::string(rule_name(rule)) +
                 ") splits the branch: line " + std::to_string(l.number) + " must open a new branch with '{'",
             l.justification.refs);
      }
    }
    for (const auto& b : s_.blocks) {
      if (b.id != 0) {
        const auto& first = s_.line(b.start_line);
        bool is_rule = first.justification.kind == Justification::Kind::Rule;
        bool resolved = resolved_[static_cast<std::size_t>(b.start_line)].has_value();
        if (first.block == b.id && (!is_rule || (resolved && !is_beta_line(b.start_line)))) {
          diag(b.start_line, codes::kBadSplit,
               "the branch starting in line " + std::to_string(b.start_line) +
                   " must begin with an application of a branching rule (&F, |T, ->T)");
        }
      }
      if (b.children.empty()) continue;
      const int first_child_start = s_.block(b.children.front()).start_line;
      for (int n : s_.own_lines(b.id)) {
        if (n > first_child_start)
          diag(n, codes::kLinesAfterSplit,
               "line " + std::to_string(n) + " follows the split in line " + std::to_string(first_child_start) +
                   "; after a split every line belongs to one of the two branches");
      }
      if (b.children.size() != 2) {
        diag(first_child_start, codes::kBadSplit,
             "a split produces exactly two branches, found " + std::to_string(b.children.size()));
        continue;
      }
      const Block& left = s_.block(b.children[0]);
      const Block& right = s_.block(b.children[1]);
      sibling_pair(left.start_line, right.start_line);
    }
  }

  void sibling_pair(int f1, int f2) {
    if (!is_beta_line(f1) || !is_beta_line(f2)) return;
    int m1 = s_.line(f1).justification.refs[0];
    int m2 = s_.line(f2).justification.refs[0];
    if (m1 != m2) {
      diag(f2, codes::kBranchNotComplementary,
           "the branches starting in lines " + std::to_string(f1) + " and " + std::to_string(f2) +
               " must both expand the same formula, but they cite lines " + std::to_string(m1) + " and " +
               std::to_string(m2),
           {m1, m2});
      return;
    }
    if (!component_ok_[static_cast<std::size_t>(f1)] || !component_ok_[static_cast<std::size_t>(f2)]) return;
    auto comps = components(s_.line(m1).signed_formula());
    const auto& a = s_.line(f1).signed_formula();
    const auto& b = s_.line(f2).signed_formula();
    bool pair = (a == comps[0] && b == comps[1]) || (a == comps[1] && b == comps[0]);
    if (!pair) {
      auto rule = *resolved_[static_cast<std::size_t>(f1)];
      std::string expected;
      for (const auto& c : comps) expected += (expected.empty() ? "" : " and ") + format_signed(c);
      diag(f2, codes::kBranchNotComplementary,
           application(rule, m1, f2) + ": the two branches must start with " + expected + ", one in each branch",
           {m1, f1});
    }
  }

  Verdict verdict() const {
    Verdict v;
    if (!diags_.empty()) {
      v.kind = Verdict::Kind::Invalid;
      return v;
    }
    for (int leaf : s_.leaf_blocks()) {
      const Block& b = s_.block(leaf);
      if (!s_.line(b.end_line).is_bottom()) v.open_branches.push_back(leaf);
    }
    if (v.open_branches.empty()) {
      v.kind = Verdict::Kind::Valid;
      return v;
    }
    for (int leaf : v.open_branches) {
      auto branch = branch_formulas(s_, leaf);
      if (!saturated(branch) || has_complementary_pair(branch)) continue;
      try {
        v.model = extract_countermodel(branch);
        v.model_branch = leaf;
        v.kind = Verdict::Kind::Countermodel;
        return v;
      } catch (const NotSaturated&) {
      }
    }
    v.kind = Verdict::Kind::Incomplete;
    return v;
  }

  const ProofScript& s_;
  std::vector<std::vector<int>> ancestors_;
  std::vector<std::optional<RuleId>> resolved_;
  std::vector<bool> component_ok_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

CheckReport check(const ProofScript& script) { return Checker(script).run(); }

}  // namespace anita
