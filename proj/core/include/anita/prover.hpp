#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "anita/checker.hpp"
#include "anita/formula.hpp"
#include "anita/proof_script.hpp"

namespace anita {

class NotPropositional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooManyAtoms : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProverResult {
  enum class Kind { Closed, Open };

  Kind kind = Kind::Open;
  std::optional<ProofScript> script;  // Closed
  std::optional<Countermodel> model;  // Open
};

struct ProverOptions {
  std::size_t node_budget = 1'000'000;
};

bool is_propositional(const Formula& phi);
bool is_propositional(const Sequent& seq);
std::set<std::string> atoms_of(const Sequent& seq);

/// Classical truth value of a propositional formula; atoms missing from the
/// valuation are false.
bool evaluate(const Formula& phi, const std::map<std::string, bool>& valuation);

/// Automatic propositional tableau: alpha rules before beta rules, each
/// class in FIFO order, branches closed on complementary atoms. A closed
/// tableau is returned as a linear proof with explicit rule names.
ProverResult prove(const Sequent& seq, const ProverOptions& options = {});

struct Entailment {
  bool holds = false;
  std::optional<Countermodel> witness;  // total falsifying valuation
};

inline constexpr std::size_t kMaxTruthTableAtoms = 24;

Entailment truth_table_entails(const Sequent& seq);

}  // namespace anita
