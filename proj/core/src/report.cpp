#include "anita/report.hpp"

#include <json.hpp>
#include <sstream>

#include "anita/latex.hpp"

namespace anita {

using nlohmann::json;

std::string CheckOutcome::verdict() const {
  if (parse_error || !report) return "parse_error";
  return std::string(verdict_name(report->verdict.kind));
}

CheckOutcome check_text(std::string_view proof_text) {
  CheckOutcome out;
  try {
    out.script = parse_proof(proof_text);
  } catch (const ParseError& e) {
    out.parse_error = e;
    return out;
  }
  out.report = check(*out.script);
  return out;
}

std::optional<Verdict::Kind> parse_expectation(std::string_view text) {
  if (text == "valid") return Verdict::Kind::Valid;
  if (text == "countermodel") return Verdict::Kind::Countermodel;
  return std::nullopt;
}

bool grade(const CheckOutcome& outcome, const Grading& grading) {
  if (!outcome.report) return false;
  if (grading.expect && outcome.report->verdict.kind != *grading.expect) return false;
  if (grading.sequent && !matches_sequent(*outcome.script, *grading.sequent)) return false;
  return true;
}

std::string latex_for(const CheckOutcome& outcome) {
  return to_qtree(build_tree(*outcome.script, *outcome.report));
}

std::string to_json(const CheckOutcome& outcome, const JsonOptions& options) {
  json doc = json::object();
  doc["verdict"] = outcome.verdict();
  json diags = json::array();
  if (outcome.parse_error) {
    const auto& e = *outcome.parse_error;
    diags.push_back({{"line", e.line()},
                     {"code", "PARSE_ERROR"},
                     {"message", "column " + std::to_string(e.column()) + ": " + e.detail()},
                     {"refs", json::array()}});
    doc["sequent"] = nullptr;
  } else {
    const auto& r = *outcome.report;
    for (const auto& d : r.diagnostics)
      diags.push_back({{"line", d.line}, {"code", d.code}, {"message", d.message}, {"refs", d.refs}});
    if (r.sequent) {
      json premises = json::array();
      for (const auto& p : r.sequent->premises) premises.push_back(format_formula(p));
      doc["sequent"] = {{"premises", premises}, {"conclusion", format_formula(r.sequent->conclusion)}};
    } else {
      doc["sequent"] = nullptr;
    }
    if (r.verdict.model) {
      json model = json::object();
      for (const auto& [atom, sign] : r.verdict.model->assignments) model[atom] = std::string(1, sign_char(sign));
      doc["countermodel"] = model;
    }
    if (!r.verdict.open_branches.empty()) {
      json branches = json::array();
      for (int leaf : r.verdict.open_branches) branches.push_back(branch_lines(*outcome.script, leaf));
      doc["open_branches"] = branches;
    }
    if (options.include_latex) doc["latex"] = latex_for(outcome);
  }
  doc["diagnostics"] = diags;
  if (options.grade_ok) doc["grade_ok"] = *options.grade_ok;
  return doc.dump(2) + "\n";
}

namespace {

constexpr const char* kGreen = "\x1b[32m";
constexpr const char* kYellow = "\x1b[33m";
constexpr const char* kRed = "\x1b[31m";
constexpr const char* kReset = "\x1b[0m";

std::string join_lines(const std::vector<int>& lines) {
  std::string s;
  for (int n : lines) s += (s.empty() ? "" : ", ") + std::to_string(n);
  return s;
}

}  // namespace

std::string to_human(const CheckOutcome& outcome, bool color) {
  std::ostringstream os;
  auto heading = [&](const char* c, const std::string& text) {
    if (color) os << c << text << kReset << '\n';
    else os << text << '\n';
  };
  if (outcome.parse_error) {
    const auto& e = *outcome.parse_error;
    heading(kRed, "Parse error at line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) +
                      ": " + e.detail());
    return os.str();
  }
  const auto& r = *outcome.report;
  switch (r.verdict.kind) {
    case Verdict::Kind::Valid:
      heading(kGreen, "Valid.");
      break;
    case Verdict::Kind::Countermodel:
      heading(kGreen, "Countermodel: " + r.verdict.model->to_string());
      break;
    case Verdict::Kind::Incomplete:
      heading(kYellow, "Incomplete.");
      for (int leaf : r.verdict.open_branches) {
        auto lines = branch_lines(*outcome.script, leaf);
        os << "  open branch ending at line " << lines.back() << " (lines " << join_lines(lines) << ")\n";
      }
      break;
    case Verdict::Kind::Invalid:
      heading(kRed, "Invalid.");
      for (const auto& d : r.diagnostics) os << "  line " << d.line << " [" << d.code << "]: " << d.message << '\n';
      break;
  }
  return os.str();
}

}  // namespace anita
