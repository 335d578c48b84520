#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anita/latex.hpp"
#include "anita/prover.hpp"
#include "anita/report.hpp"
#include "anita/service.hpp"

namespace anita::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot read '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

bool use_color(bool tty) {
  const char* env = std::getenv("ANITA_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "never") return false;
  if (mode == "always") return true;
  return tty;
}

std::string location(const ParseError& e) {
  return "line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) + ": " + e.detail();
}

struct CheckArgs {
  std::string file;
  bool json = false;
  bool latex = false;
  std::string expect;
  std::string sequent;
};

int cmd_check(const CheckArgs& a, std::istream& in, std::ostream& out, std::ostream& err, bool color) {
  Grading grading;
  if (!a.expect.empty()) {
    grading.expect = parse_expectation(a.expect);
    if (!grading.expect) {
      err << "anita: --expect must be 'valid' or 'countermodel'\n";
      return kUsageError;
    }
  }
  if (!a.sequent.empty()) {
    try {
      grading.sequent = parse_sequent(a.sequent);
    } catch (const ParseError& e) {
      err << "anita: --sequent: column " << e.column() << ": " << e.detail() << "\n";
      return kUsageError;
    }
  }

  CheckOutcome outcome = check_text(read_input(a.file, in));
  std::optional<bool> graded;
  if (grading.active()) graded = grade(outcome, grading);

  if (a.json) {
    JsonOptions options;
    options.include_latex = a.latex;
    options.grade_ok = graded;
    out << to_json(outcome, options);
  } else {
    out << to_human(outcome, color);
    if (a.latex && outcome.script) out << latex_for(outcome);
    if (graded && !*graded) {
      if (grading.expect && outcome.report && outcome.report->ok()) {
        err << "Grading: expected " << a.expect << ", got " << outcome.verdict() << "\n";
      } else if (grading.sequent && outcome.script) {
        err << "Grading: the proof does not establish " << format_sequent(*grading.sequent) << "\n";
      } else {
        err << "Grading: the proof is not an acceptable answer\n";
      }
    }
  }

  if (outcome.parse_error) return kParseError;
  if (graded) return *graded ? kOk : kRejected;
  return outcome.report->ok() ? kOk : kRejected;
}

int cmd_latex(const std::string& file, std::istream& in, std::ostream& out, std::ostream& err) {
  CheckOutcome outcome = check_text(read_input(file, in));
  if (outcome.parse_error) {
    err << "Parse error at " << location(*outcome.parse_error) << "\n";
    return kParseError;
  }
  out << latex_for(outcome);
  return kOk;
}

int cmd_prove(const std::string& text, bool json, std::ostream& out, std::ostream& err) {
  if (json) {
    service::Response r = service::handle_prove(nlohmann::json{{"sequent", text}}.dump());
    if (r.status != 200) {
      err << r.body;
      return kUsageError;
    }
    out << r.body;
    return kOk;
  }
  std::optional<Sequent> seq;
  try {
    seq = parse_sequent(text);
  } catch (const ParseError& e) {
    err << "anita: --sequent: column " << e.column() << ": " << e.detail() << "\n";
    return kUsageError;
  }
  try {
    ProverResult result = prove(*seq);
    if (result.kind == ProverResult::Kind::Closed) {
      out << serialize_proof(*result.script);
    } else {
      out << "Countermodel: " << result.model->to_string() << "\n";
    }
    return kOk;
  } catch (const NotPropositional& e) {
    err << "anita: " << e.what() << "\n";
  } catch (const BudgetExceeded& e) {
    err << "anita: " << e.what() << "\n";
  }
  return kUsageError;
}

int cmd_entails(const std::string& text, std::ostream& out, std::ostream& err) {
  try {
    Entailment e = truth_table_entails(parse_sequent(text));
    if (e.holds) {
      out << "Entailed.\n";
    } else {
      out << "Not entailed: " << e.witness->to_string() << "\n";
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "anita: --sequent: column " << e.column() << ": " << e.detail() << "\n";
  } catch (const std::exception& e) {
    err << "anita: " << e.what() << "\n";
  }
  return kUsageError;
}

int cmd_serve(const service::Options& options, std::ostream& out, std::ostream& err) {
  service::Server server(options);
  if (!server.bind()) {
    err << "anita: cannot bind " << options.bind << ":" << options.port << "\n";
    return kUsageError;
  }
  out << "listening on http://" << options.bind << ":" << server.port() << "\n" << std::flush;
  server.listen();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err, bool tty) {
  CLI::App app{"Signed analytic tableau checker", "anita"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(service::version()));

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Check a linear tableau proof");
  check->add_option("file", check_args.file, "Proof file (stdin when omitted or '-')");
  check->add_flag("--json", check_args.json, "Machine-readable output");
  check->add_flag("--latex", check_args.latex, "Also emit the qtree rendering");
  check->add_option("--expect", check_args.expect, "Expected verdict: valid or countermodel");
  check->add_option("--sequent", check_args.sequent, "Sequent the proof must establish");

  std::string latex_file;
  auto* latex = app.add_subcommand("latex", "Render a proof as a qtree");
  latex->add_option("file", latex_file, "Proof file (stdin when omitted or '-')");

  std::string prove_sequent;
  bool prove_json = false;
  auto* prove_cmd = app.add_subcommand("prove", "Build a tableau for a propositional sequent");
  prove_cmd->add_option("--sequent", prove_sequent, "Sequent such as 'A, A->B |- B'")->required();
  prove_cmd->add_flag("--json", prove_json, "Machine-readable output");

  std::string entails_sequent;
  auto* entails = app.add_subcommand("entails", "Decide a propositional sequent by truth table");
  entails->add_option("--sequent", entails_sequent, "Sequent such as 'A, A->B |- B'")->required();

  service::Options serve_options;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", serve_options.port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--bind", serve_options.bind, "Address to listen on");
  serve->add_option("--cors-origin", serve_options.cors_origin, "Access-Control-Allow-Origin value");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << service::version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "anita: " << e.what() << "\n";
    err << "Run 'anita --help' for usage.\n";
    return kUsageError;
  }

  try {
    if (*check) return cmd_check(check_args, in, out, err, use_color(tty));
    if (*latex) return cmd_latex(latex_file, in, out, err);
    if (*prove_cmd) return cmd_prove(prove_sequent, prove_json, out, err);
    if (*entails) return cmd_entails(entails_sequent, out, err);
    if (*serve) return cmd_serve(serve_options, out, err);
  } catch (const InputError& e) {
    err << "anita: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace anita::cli
