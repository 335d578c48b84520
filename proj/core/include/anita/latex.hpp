#pragma once

#include <string>
#include <vector>

#include "anita/checker.hpp"
#include "anita/proof_script.hpp"

namespace anita {

enum class Highlight { None, ClosingPair, OpenPath };
enum class Terminator { Closed, Open };

struct TreeFormula {
  SignedFormula formula;
  int line = 0;
  Highlight highlight = Highlight::None;
};

/// Tableau tree recovered from a linear proof: one node per block, holding
/// the block's own formulas in order.
struct TableauTree {
  std::vector<TreeFormula> formulas;
  std::vector<TableauTree> children;
  Terminator terminator = Terminator::Open;  // meaningful for leaves only
};

/// Builds the tree. When some branch is open, the formulas on every open
/// root-to-leaf path are flagged OpenPath; otherwise the formulas cited by
/// closures are flagged ClosingPair.
TableauTree build_tree(const ProofScript& script, const CheckReport& report);

std::size_t leaf_count(const TableauTree& tree);
std::size_t formula_count(const TableauTree& tree);

/// Emits a qtree `\Tree` expression, preceded by a comment line naming the
/// packages it needs unless `header` is false.
std::string to_qtree(const TableauTree& tree, bool header = true);

}  // namespace anita
