#include <benchmark/benchmark.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "anita/checker.hpp"
#include "anita/formula.hpp"
#include "anita/latex.hpp"
#include "anita/proof_script.hpp"
#include "anita/prover.hpp"
#include "anita/report.hpp"

using namespace anita;

namespace {

std::vector<std::string> corpus() {
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(ANITA_CORPUS_DIR))
    if (e.path().extension() == ".txt") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::vector<std::string> texts;
  for (const auto& p : paths) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    texts.push_back(ss.str());
  }
  return texts;
}

const std::vector<std::string>& texts() {
  static const std::vector<std::string> t = corpus();
  return t;
}

void BM_ParseFormula(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_formula("Ax (H(x) -> M(x)) & (~A | B -> C) -> Ey (P(f(y), a) | ~Q(y))"));
}
BENCHMARK(BM_ParseFormula);

void BM_ParseCorpus(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& t : texts()) benchmark::DoNotOptimize(parse_proof(t));
}
BENCHMARK(BM_ParseCorpus);

void BM_CheckCorpus(benchmark::State& state) {
  std::vector<ProofScript> scripts;
  for (const auto& t : texts()) scripts.push_back(parse_proof(t));
  for (auto _ : state)
    for (const auto& s : scripts) benchmark::DoNotOptimize(check(s));
}
BENCHMARK(BM_CheckCorpus);

void BM_CorpusToJson(benchmark::State& state) {
  std::vector<CheckOutcome> outcomes;
  for (const auto& t : texts()) outcomes.push_back(check_text(t));
  for (auto _ : state)
    for (const auto& o : outcomes) benchmark::DoNotOptimize(to_json(o, {true, std::nullopt}));
}
BENCHMARK(BM_CorpusToJson);

void BM_QtreeCorpus(benchmark::State& state) {
  std::vector<CheckOutcome> outcomes;
  for (const auto& t : texts()) outcomes.push_back(check_text(t));
  for (auto _ : state)
    for (const auto& o : outcomes) benchmark::DoNotOptimize(latex_for(o));
}
BENCHMARK(BM_QtreeCorpus);

// n premises A0->A1, ..., A(n-1)->An, A0 |- An.
Sequent chain(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) text += "A" + std::to_string(i) + " -> A" + std::to_string(i + 1) + ", ";
  text += "A0 |- A" + std::to_string(n);
  return parse_sequent(text);
}

void BM_ProveChain(benchmark::State& state) {
  Sequent seq = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prove(seq));
}
BENCHMARK(BM_ProveChain)->RangeMultiplier(2)->Range(2, 16);

void BM_ProveOpen(benchmark::State& state) {
  Sequent seq = parse_sequent("(A | B) & (C | D) & (E | F) |- A & C & E");
  for (auto _ : state) benchmark::DoNotOptimize(prove(seq));
}
BENCHMARK(BM_ProveOpen);

void BM_TruthTable(benchmark::State& state) {
  Sequent seq = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(truth_table_entails(seq));
}
BENCHMARK(BM_TruthTable)->RangeMultiplier(2)->Range(2, 16);

}  // namespace

BENCHMARK_MAIN();
