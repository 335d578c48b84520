#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "anita/formula.hpp"
#include "anita/proof_script.hpp"

namespace anita {

/// Diagnostic codes emitted by the checker.
namespace codes {
inline constexpr const char* kBadInitialSegment = "BAD_INITIAL_SEGMENT";
inline constexpr const char* kBadRef = "BAD_REF";
inline constexpr const char* kScopeViolation = "SCOPE_VIOLATION";
inline constexpr const char* kNotExpandable = "NOT_EXPANDABLE";
inline constexpr const char* kWrongRule = "WRONG_RULE";
inline constexpr const char* kWrongComponent = "WRONG_COMPONENT";
inline constexpr const char* kNotSubstitutable = "NOT_SUBSTITUTABLE";
inline constexpr const char* kNotFresh = "NOT_FRESH";
inline constexpr const char* kBadSplit = "BAD_SPLIT";
inline constexpr const char* kBranchNotComplementary = "BRANCH_NOT_COMPLEMENTARY";
inline constexpr const char* kLinesAfterSplit = "LINES_AFTER_SPLIT";
inline constexpr const char* kNotClosedPair = "NOT_CLOSED_PAIR";
inline constexpr const char* kLinesAfterClosure = "LINES_AFTER_CLOSURE";
}  // namespace codes

struct Diagnostic {
  int line = 0;
  std::string code;
  std::string message;
  std::vector<int> refs;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Partial valuation read off an open branch. Keys are atoms in ASCII
/// notation; atoms absent from the map are unconstrained.
struct Countermodel {
  std::map<std::string, Sign> assignments;

  /// `v(A)=T, v(C)=F`
  std::string to_string() const;

  friend bool operator==(const Countermodel&, const Countermodel&) = default;
};

struct Verdict {
  enum class Kind { Valid, Countermodel, Incomplete, Invalid };

  Kind kind = Kind::Invalid;
  std::optional<Countermodel> model;  // Countermodel only
  std::optional<int> model_branch;    // leaf block id of the model's branch
  std::vector<int> open_branches;     // leaf block ids, Countermodel and Incomplete

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

std::string_view verdict_name(Verdict::Kind k);

/// How a line was justified once checked: the rule that produced it (if
/// any) and the lines it cites.
struct LineResolution {
  int line = 0;
  std::optional<RuleId> rule;
  std::vector<int> sources;

  friend bool operator==(const LineResolution&, const LineResolution&) = default;
};

struct CheckReport {
  Verdict verdict;
  std::vector<Diagnostic> diagnostics;
  std::optional<Sequent> sequent;  // absent when the initial segment is malformed
  std::vector<LineResolution> resolution;

  bool ok() const { return verdict.kind == Verdict::Kind::Valid || verdict.kind == Verdict::Kind::Countermodel; }

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

class BadInitialSegment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSaturated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Components produced by an alpha or beta rule; empty for literals and
/// quantified formulas.
std::vector<SignedFormula> components(const SignedFormula& sf);

CheckReport check(const ProofScript& script);

/// True when every alpha formula has all its components on the branch,
/// every beta formula at least one, and no quantified formula occurs.
bool saturated(std::span<const SignedFormula> branch);

Countermodel extract_countermodel(std::span<const SignedFormula> branch);

Sequent theorem_of(const ProofScript& script);

/// Premises compared as multisets, conclusion exactly.
bool matches_sequent(const ProofScript& script, const Sequent& expected);

/// Syntactic equality up to renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// Copy of the script with every rule line carrying the rule the checker
/// resolved for it.
ProofScript with_resolved_rules(ProofScript script, const CheckReport& report);

/// Signed formulas on the branch ending at a leaf block.
std::vector<SignedFormula> branch_formulas(const ProofScript& script, int leaf_block);

}  // namespace anita
