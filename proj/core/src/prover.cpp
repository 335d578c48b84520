#include "anita/prover.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

namespace anita {

bool is_propositional(const Formula& phi) {
  switch (phi.kind()) {
    case Connective::Atom:
      return phi.args().empty();
    case Connective::Not:
      return is_propositional(phi.operand());
    case Connective::ForAll:
    case Connective::Exists:
      return false;
    default:
      return is_propositional(phi.lhs()) && is_propositional(phi.rhs());
  }
}

bool is_propositional(const Sequent& seq) {
  return is_propositional(seq.conclusion) &&
         std::ranges::all_of(seq.premises, [](const Formula& f) { return is_propositional(f); });
}

namespace {

void collect_atoms(const Formula& phi, std::set<std::string>& out) {
  switch (phi.kind()) {
    case Connective::Atom:
      out.insert(phi.predicate());
      return;
    case Connective::Not:
      collect_atoms(phi.operand(), out);
      return;
    case Connective::ForAll:
    case Connective::Exists:
      collect_atoms(phi.body(), out);
      return;
    default:
      collect_atoms(phi.lhs(), out);
      collect_atoms(phi.rhs(), out);
  }
}

void require_propositional(const Sequent& seq) {
  if (!is_propositional(seq))
    throw NotPropositional("the sequent " + format_sequent(seq) +
                           " is first-order; only propositional sequents can be proved automatically");
}

class Prover {
 public:
  explicit Prover(const ProverOptions& options) : options_(options) {}

  ProverResult run(const Sequent& seq) {
    Branch br;
    bool closed = false;
    for (const auto& p : seq.premises) closed = add(br, {Sign::True, p}, Justification::premise(), true) || closed;
    closed = add(br, {Sign::False, seq.conclusion}, Justification::conclusion(), true) || closed;
    if (!closed) closed = expand(br);
    ProverResult result;
    if (closed) {
      result.kind = ProverResult::Kind::Closed;
      result.script = builder_.finish();
    } else {
      result.kind = ProverResult::Kind::Open;
      result.model = std::move(model_);
    }
    return result;
  }

 private:
  struct Branch {
    std::vector<std::pair<SignedFormula, int>> formulas;
    std::deque<int> alpha;
    std::deque<int> beta;

    bool has(const SignedFormula& sf) const {
      return std::ranges::any_of(formulas, [&](const auto& p) { return p.first == sf; });
    }
    const SignedFormula& at(int line) const {
      return std::ranges::find_if(formulas, [&](const auto& p) { return p.second == line; })->first;
    }
  };

  // Adds a line to the branch; returns true if the branch closed.
  bool add(Branch& br, const SignedFormula& sf, Justification just, bool force = false) {
    if (!force && br.has(sf)) return false;
    if (++nodes_ > options_.node_budget)
      throw BudgetExceeded("node budget of " + std::to_string(options_.node_budget) + " exhausted");
    int line = builder_.add(sf, std::move(just));
    br.formulas.emplace_back(sf, line);
    if (auto rule = rule_for(sf)) {
      (rule_class(*rule) == RuleClass::Alpha ? br.alpha : br.beta).push_back(line);
      return false;
    }
    SignedFormula complement{opposite(sf.sign), sf.formula};
    for (const auto& [other, n] : br.formulas) {
      if (other == complement) {
        builder_.add_bottom(n, line);
        return true;
      }
    }
    return false;
  }

  bool expand(Branch& br) {
    for (;;) {
      if (!br.alpha.empty()) {
        int src = br.alpha.front();
        br.alpha.pop_front();
        SignedFormula sf = br.at(src);
        auto rule = *rule_for(sf);
        for (const auto& c : components(sf))
          if (add(br, c, Justification::by_rule(rule, {src}))) return true;
        continue;
      }
      if (!br.beta.empty()) {
        int src = br.beta.front();
        br.beta.pop_front();
        SignedFormula sf = br.at(src);
        auto comps = components(sf);
        if (std::ranges::any_of(comps, [&](const SignedFormula& c) { return br.has(c); })) continue;
        auto rule = *rule_for(sf);
        for (const auto& c : comps) {
          Branch child = br;
          builder_.open_block();
          bool closed = add(child, c, Justification::by_rule(rule, {src})) || expand(child);
          if (!closed) return false;
          builder_.close_block();
        }
        return true;
      }
      std::vector<SignedFormula> branch;
      for (const auto& p : br.formulas) branch.push_back(p.first);
      model_ = extract_countermodel(branch);
      return false;
    }
  }

  ProverOptions options_;
  ScriptBuilder builder_;
  std::size_t nodes_ = 0;
  std::optional<Countermodel> model_;
};

}  // namespace

std::set<std::string> atoms_of(const Sequent& seq) {
  std::set<std::string> out;
  for (const auto& p : seq.premises) collect_atoms(p, out);
  collect_atoms(seq.conclusion, out);
  return out;
}

bool evaluate(const Formula& phi, const std::map<std::string, bool>& valuation) {
  switch (phi.kind()) {
    case Connective::Atom: {
      auto it = valuation.find(phi.predicate());
      return it != valuation.end() && it->second;
    }
    case Connective::Not:
      return !evaluate(phi.operand(), valuation);
    case Connective::And:
      return evaluate(phi.lhs(), valuation) && evaluate(phi.rhs(), valuation);
    case Connective::Or:
      return evaluate(phi.lhs(), valuation) || evaluate(phi.rhs(), valuation);
    case Connective::Implies:
      return !evaluate(phi.lhs(), valuation) || evaluate(phi.rhs(), valuation);
    default:
      throw NotPropositional("cannot evaluate quantified formula " + format_formula(phi));
  }
}

ProverResult prove(const Sequent& seq, const ProverOptions& options) {
  require_propositional(seq);
  return Prover(options).run(seq);
}

Entailment truth_table_entails(const Sequent& seq) {
  require_propositional(seq);
  auto atom_set = atoms_of(seq);
  if (atom_set.size() > kMaxTruthTableAtoms)
    throw TooManyAtoms("the sequent has " + std::to_string(atom_set.size()) + " atoms; at most " +
                       std::to_string(kMaxTruthTableAtoms) + " are supported");
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  std::map<std::string, bool> valuation;
  const std::uint64_t rows = std::uint64_t{1} << atoms.size();
  for (std::uint64_t mask = 0; mask < rows; ++mask) {
    for (std::size_t i = 0; i < atoms.size(); ++i) valuation[atoms[i]] = ((mask >> i) & 1U) != 0;
    bool premises_hold =
        std::ranges::all_of(seq.premises, [&](const Formula& p) { return evaluate(p, valuation); });
    if (premises_hold && !evaluate(seq.conclusion, valuation)) {
      Countermodel witness;
      for (const auto& [a, v] : valuation) witness.assignments[a] = v ? Sign::True : Sign::False;
      return Entailment{false, std::move(witness)};
    }
  }
  return Entailment{true, std::nullopt};
}

}  // namespace anita
