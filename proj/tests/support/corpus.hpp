#pragma once

#include <string>
#include <vector>

namespace anita::testing {

std::string corpus_dir();
std::string corpus_path(const std::string& name);
std::string read_file(const std::string& path);
std::string corpus_text(const std::string& name);

/// The twelve worked proofs, one per rule, in textbook order.
std::vector<std::string> worked_proofs();
/// Every file in the corpus directory, sorted.
std::vector<std::string> all_corpus_files();

}  // namespace anita::testing
