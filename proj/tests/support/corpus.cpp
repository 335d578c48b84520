#include "corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anita::testing {

std::string corpus_dir() { return ANITA_CORPUS_DIR; }

std::string corpus_path(const std::string& name) { return corpus_dir() + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string corpus_text(const std::string& name) { return read_file(corpus_path(name)); }

std::vector<std::string> worked_proofs() {
  return {"01_identity.txt",      "02_double_negation.txt",  "03_and_false.txt",         "04_and_true.txt",
          "05_or_true.txt",       "06_or_false.txt",         "07_implication_true.txt",  "08_implication_false.txt",
          "09_universal_true.txt", "10_universal_false.txt", "11_existential_true.txt", "12_existential_false.txt"};
}

std::vector<std::string> all_corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
    if (e.path().extension() == ".txt") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace anita::testing
