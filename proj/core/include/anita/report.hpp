#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "anita/checker.hpp"
#include "anita/formula.hpp"
#include "anita/proof_script.hpp"

namespace anita {

/// Result of checking proof text: either a parse error, or the parsed script
/// together with its report.
struct CheckOutcome {
  std::optional<ProofScript> script;
  std::optional<CheckReport> report;
  std::optional<ParseError> parse_error;

  /// "valid", "countermodel", "incomplete", "invalid" or "parse_error".
  std::string verdict() const;
};

CheckOutcome check_text(std::string_view proof_text);

/// Grading requirements: an expected verdict kind and/or an expected sequent.
struct Grading {
  std::optional<Verdict::Kind> expect;
  std::optional<Sequent> sequent;

  bool active() const { return expect.has_value() || sequent.has_value(); }
};

/// "valid" or "countermodel"; anything else is rejected.
std::optional<Verdict::Kind> parse_expectation(std::string_view text);

bool grade(const CheckOutcome& outcome, const Grading& grading);

struct JsonOptions {
  bool include_latex = false;
  std::optional<bool> grade_ok;
};

/// Stable JSON document (sorted keys, two-space indent, trailing newline).
std::string to_json(const CheckOutcome& outcome, const JsonOptions& options = {});

/// Verdict line, diagnostics and countermodel as shown to students.
std::string to_human(const CheckOutcome& outcome, bool color = false);

/// The qtree rendering of a parsed proof.
std::string latex_for(const CheckOutcome& outcome);

}  // namespace anita
