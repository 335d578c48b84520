#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "anita/checker.hpp"
#include "anita/latex.hpp"
#include "anita/proof_script.hpp"
#include "anita/prover.hpp"
#include "anita/report.hpp"
#include "anita/service.hpp"
#include "corpus.hpp"
#include "generators.hpp"

using namespace anita;
namespace gen = anita::testing;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;

struct Failure {
  std::string why;
};

void require(bool cond, const std::string& why) {
  if (!cond) throw Failure{why};
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckOutcome check_corpus(const std::string& name) { return check_text(gen::corpus_text(name)); }

std::string golden_corpus() {
  auto t0 = Clock::now();
  for (const auto& name : gen::worked_proofs()) {
    CheckOutcome o = check_corpus(name);
    require(o.report.has_value(), name + ": parse error");
    require(o.report->verdict.kind == Verdict::Kind::Valid, name + ": verdict " + o.verdict());
    require(o.report->diagnostics.empty(), name + ": has diagnostics");
  }
  double s = seconds_since(t0);
  require(s < 1.0, "took " + std::to_string(s) + "s");
  return std::to_string(gen::worked_proofs().size()) + " proofs valid in " + std::to_string(s) + "s";
}

std::string countermodels() {
  CheckOutcome a = check_corpus("countermodel_and.txt");
  require(a.report && a.report->verdict.kind == Verdict::Kind::Countermodel, "countermodel_and: " + a.verdict());
  Countermodel want_a{{{"A", Sign::True}, {"B", Sign::False}, {"C", Sign::False}}};
  require(a.report->verdict.model == want_a, "countermodel_and: got " + a.report->verdict.model->to_string());

  CheckOutcome o = check_corpus("countermodel_or.txt");
  require(o.report && o.report->verdict.kind == Verdict::Kind::Countermodel, "countermodel_or: " + o.verdict());
  Countermodel want_o{{{"A", Sign::True}, {"C", Sign::False}}};
  require(o.report->verdict.model == want_o, "countermodel_or: got " + o.report->verdict.model->to_string());
  require(!o.report->verdict.model->assignments.contains("B"), "countermodel_or: B assigned");
  return want_a.to_string() + "; " + want_o.to_string();
}

std::string errors() {
  CheckOutcome f = check_corpus("fresh_variable_error.txt");
  require(f.report.has_value(), "fresh_variable_error: parse error");
  const Diagnostic* hit = nullptr;
  for (const auto& d : f.report->diagnostics)
    if (d.code == codes::kNotFresh) hit = &d;
  require(hit != nullptr, "no NOT_FRESH diagnostic");
  require(hit->line == 4, "NOT_FRESH on line " + std::to_string(hit->line));
  require(std::find(hit->refs.begin(), hit->refs.end(), 3) != hit->refs.end(), "NOT_FRESH does not cite line 3");
  require(hit->message.find("line 3") != std::string::npos, "message does not name line 3");

  CheckOutcome t = check_corpus("transitivity_incomplete.txt");
  require(t.report && t.report->verdict.kind == Verdict::Kind::Incomplete, "transitivity_incomplete: " + t.verdict());
  const auto& open = t.report->verdict.open_branches;
  require(open.size() == 1, "expected one open branch, got " + std::to_string(open.size()));
  std::vector<int> lines = branch_lines(*t.script, open.front());
  require(lines == std::vector<int>{1, 2, 3, 4, 7}, "open branch lines differ");
  std::string j = to_json(t);
  require(j.find("\"open_branches\"") != std::string::npos, "JSON lacks open_branches");
  return "NOT_FRESH at 4 citing 3; incomplete with open branch 1,2,3,4,7";
}

bool model_falsifies(const Sequent& seq, const Countermodel& m) {
  std::set<std::string> atoms = atoms_of(seq);
  std::vector<std::string> free;
  std::map<std::string, bool> base;
  for (const auto& a : atoms) {
    auto it = m.assignments.find(a);
    if (it == m.assignments.end())
      free.push_back(a);
    else
      base[a] = it->second == Sign::True;
  }
  for (std::size_t bits = 0; bits < (std::size_t{1} << free.size()); ++bits) {
    std::map<std::string, bool> v = base;
    for (std::size_t i = 0; i < free.size(); ++i) v[free[i]] = (bits >> i & 1) != 0;
    for (const auto& p : seq.premises)
      if (!gen::oracle_eval(p, v)) return false;
    if (gen::oracle_eval(seq.conclusion, v)) return false;
  }
  return true;
}

void agree_with_oracle(const Sequent& seq) {
  std::string s = format_sequent(seq);
  ProverResult r = prove(seq);
  bool valid = gen::oracle_entails(seq);
  require((r.kind == ProverResult::Kind::Closed) == valid, s + ": prover disagrees with truth table");
  if (r.kind == ProverResult::Kind::Closed) {
    require(r.script.has_value(), s + ": closed without script");
    CheckReport rep = check(*r.script);
    require(rep.verdict.kind == Verdict::Kind::Valid, s + ": closed script does not check valid");
    require(theorem_of(*r.script) == seq, s + ": closed script proves another sequent");
    CheckOutcome text = check_text(serialize_proof(*r.script));
    require(text.report && text.report->verdict.kind == Verdict::Kind::Valid, s + ": serialized script not valid");
  } else {
    require(r.model.has_value(), s + ": open without model");
    require(model_falsifies(seq, *r.model), s + ": model " + r.model->to_string() + " does not falsify");
  }
}

std::string oracle_equivalence() {
  auto t0 = Clock::now();
  std::vector<Sequent> all = gen::enumerate_sequents({"A", "B"}, 2, 3);
  for (const auto& seq : all) agree_with_oracle(seq);
  gen::Rng rng(20240601);
  for (int i = 0; i < 1000; ++i) agree_with_oracle(gen::random_prop_sequent(rng, {"A", "B", "C"}, 4, 2));
  double s = seconds_since(t0);
  require(s < 60.0, "took " + std::to_string(s) + "s");
  return std::to_string(all.size()) + " enumerated + 1000 random sequents in " + std::to_string(s) + "s";
}

std::string round_trip() {
  std::size_t n = 0;
  for (const auto& name : gen::all_corpus_files()) {
    ProofScript once = parse_proof(gen::corpus_text(name));
    ProofScript twice = parse_proof(serialize_proof(once));
    require(once == twice, name + ": round trip changed structure");
    ++n;
  }
  gen::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    ProofScript s = gen::random_script(rng);
    std::string text = serialize_proof(s);
    require(parse_proof(text) == s, "fuzz script " + std::to_string(i) + " changed:\n" + text);
  }
  return std::to_string(n) + " corpus files + 500 generated scripts";
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + needle.size())) ++n;
  return n;
}

std::size_t splits(const TableauTree& t) {
  std::size_t n = t.children.size() == 2 ? 1 : 0;
  for (const auto& c : t.children) n += splits(c);
  return n;
}

void flagged(const TableauTree& t, Highlight h, std::set<int>& out) {
  for (const auto& f : t.formulas)
    if (f.highlight == h) out.insert(f.line);
  for (const auto& c : t.children) flagged(c, h, out);
}

std::string latex_structure() {
  CheckOutcome v = check_corpus("transitivity.txt");
  require(v.report.has_value(), "transitivity: parse error");
  TableauTree tree = build_tree(*v.script, *v.report);
  std::string tex = to_qtree(tree);
  require(splits(tree) == 2, "transitivity splits: " + std::to_string(splits(tree)));
  require(count(tex, "$\\times$") == 3, "transitivity crosses: " + std::to_string(count(tex, "$\\times$")));
  require(count(tex, "\\color{blue}") == 6, "blue flags: " + std::to_string(count(tex, "\\color{blue}")));
  std::set<int> closing;
  for (const auto& l : v.script->lines)
    if (l.is_bottom()) closing.insert(l.justification.refs.begin(), l.justification.refs.end());
  std::set<int> blue;
  flagged(tree, Highlight::ClosingPair, blue);
  require(blue == closing && blue.size() == 6, "blue flags are not the closing pairs");

  CheckOutcome i = check_corpus("transitivity_incomplete.txt");
  require(i.report.has_value(), "transitivity_incomplete: parse error");
  TableauTree itree = build_tree(*i.script, *i.report);
  std::string itex = to_qtree(itree);
  require(count(itex, "\\color{red}") == 5, "red flags: " + std::to_string(count(itex, "\\color{red}")));
  std::set<int> red;
  flagged(itree, Highlight::OpenPath, red);
  require(red == std::set<int>{1, 2, 3, 4, 7}, "red flags are not the open path");
  return "2 splits, 3 crosses, 6 blue; 5 red";
}

std::string run_cli(const std::string& file) {
  std::string cmd = "'" + g_cli + "' check --json '" + file + "'";
  FILE* p = popen(cmd.c_str(), "r");
  require(p != nullptr, "cannot run " + g_cli);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  pclose(p);
  return out;
}

std::string service_conformance() {
  require(!g_cli.empty(), "no CLI path given");
  service::Server server(service::Options{"127.0.0.1", 0, {}});
  require(server.bind(), "cannot bind an ephemeral port");
  std::thread loop([&] { server.listen(); });
  server.wait_until_ready();
  struct Stop {
    service::Server& s;
    std::thread& t;
    ~Stop() {
      s.stop();
      t.join();
    }
  } stop{server, loop};

  auto post = [port = server.port()](const std::string& proof) {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(30);
    auto r = c.Post("/check", nlohmann::json{{"proof", proof}}.dump(), "application/json");
    if (!r) return std::string("<no response>");
    if (r->status != 200) return "<status " + std::to_string(r->status) + ">";
    return r->body;
  };

  std::size_t files = 0;
  for (const auto& name : gen::all_corpus_files()) {
    std::string http = post(gen::corpus_text(name));
    std::string cli = run_cli(gen::corpus_path(name));
    require(http == cli, name + ": HTTP body differs from CLI output");
    ++files;
  }

  std::string proof = gen::corpus_text("transitivity.txt");
  std::vector<std::future<std::string>> futures;
  for (int i = 0; i < 50; ++i) futures.push_back(std::async(std::launch::async, post, proof));
  std::vector<std::string> bodies;
  for (auto& f : futures) bodies.push_back(f.get());
  for (const auto& b : bodies) require(b == bodies.front() && b.front() == '{', "concurrent bodies differ: " + b);
  return std::to_string(files) + " files match the CLI; 50 concurrent bodies identical";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"golden-corpus-validity", golden_corpus},
      {"countermodel-reproduction", countermodels},
      {"error-reproduction", errors},
      {"oracle-equivalence", oracle_equivalence},
      {"round-trip", round_trip},
      {"latex-structure", latex_structure},
      {"service-conformance", service_conformance},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    try {
      std::cout << "PASS " << name << ": " << run() << "\n";
    } catch (const Failure& f) {
      ++failed;
      std::cout << "FAIL " << name << ": " << f.why << "\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "FAIL " << name << ": exception: " << e.what() << "\n";
    }
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
