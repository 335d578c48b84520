#include "anita/latex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace anita {

namespace {

struct TreeBuilder {
  const ProofScript& script;
  std::set<int> red;
  std::set<int> blue;

  TableauTree node(int block_id) const {
    TableauTree t;
    const Block& b = script.block(block_id);
    for (int n : script.own_lines(block_id)) {
      const auto& l = script.line(n);
      if (l.is_bottom()) continue;
      Highlight h = red.contains(n) ? Highlight::OpenPath : blue.contains(n) ? Highlight::ClosingPair : Highlight::None;
      t.formulas.push_back(TreeFormula{l.signed_formula(), n, h});
    }
    for (int c : b.children) t.children.push_back(node(c));
    if (b.is_leaf() && b.end_line >= 1 && script.line(b.end_line).is_bottom()) t.terminator = Terminator::Closed;
    return t;
  }
};

void emit(std::ostream& os, const TableauTree& t) {
  os << "[.{";
  for (std::size_t i = 0; i < t.formulas.size(); ++i) {
    if (i) os << " \\\\ ";
    std::string math = "$" + format_signed(t.formulas[i].formula, Notation::Latex) + "$";
    switch (t.formulas[i].highlight) {
      case Highlight::ClosingPair:
        os << "\\color{blue}{" << math << "}";
        break;
      case Highlight::OpenPath:
        os << "\\color{red}{" << math << "}";
        break;
      case Highlight::None:
        os << math;
        break;
    }
  }
  os << "}";
  for (const auto& c : t.children) {
    os << ' ';
    emit(os, c);
  }
  if (t.children.empty() && t.terminator == Terminator::Closed) os << " [.{$\\times$} ]";
  os << " ]";
}

}  // namespace

TableauTree build_tree(const ProofScript& script, const CheckReport& report) {
  TreeBuilder b{script, {}, {}};
  std::vector<int> open = report.verdict.open_branches;
  if (report.verdict.kind == Verdict::Kind::Invalid) {
    // Invalid reports carry no branch analysis.
    for (int leaf : script.leaf_blocks()) {
      const Block& blk = script.block(leaf);
      if (blk.end_line < 1 || !script.line(blk.end_line).is_bottom()) open.push_back(leaf);
    }
  }
  if (!open.empty()) {
    for (int leaf : open)
      for (int n : branch_lines(script, leaf)) b.red.insert(n);
  } else {
    for (const auto& l : script.lines) {
      if (!l.is_bottom()) continue;
      for (int r : l.justification.refs)
        if (r >= 1 && r < l.number) b.blue.insert(r);
    }
  }
  return b.node(0);
}

std::size_t leaf_count(const TableauTree& tree) {
  if (tree.children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : tree.children) n += leaf_count(c);
  return n;
}

std::size_t formula_count(const TableauTree& tree) {
  std::size_t n = tree.formulas.size();
  for (const auto& c : tree.children) n += formula_count(c);
  return n;
}

std::string to_qtree(const TableauTree& tree, bool header) {
  std::ostringstream os;
  if (header) os << "% requires \\usepackage{qtree} and \\usepackage{xcolor}\n";
  os << "\\Tree ";
  emit(os, tree);
  os << '\n';
  return os.str();
}

}  // namespace anita
