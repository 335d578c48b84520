#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "anita/formula.hpp"

namespace anita {

/// Tableau expansion rules, one per (sign, principal connective) pair.
enum class RuleId { NotT, NotF, AndT, AndF, OrT, OrF, ImpT, ImpF, AllT, AllF, ExT, ExF };

/// ASCII spelling used in proofs: `~T ~F &T &F |T |F ->T ->F AT AF ET EF`.
std::string_view rule_name(RuleId r);
std::optional<RuleId> rule_from_name(std::string_view name);
/// Human-readable name, e.g. "existential-true".
std::string_view rule_title(RuleId r);
/// The rule that expands a signed formula, if it is not a literal.
std::optional<RuleId> rule_for(const SignedFormula& sf);

enum class RuleClass { Alpha, Beta, Gamma, Delta };
RuleClass rule_class(RuleId r);

struct Justification {
  enum class Kind { Premise, Conclusion, Rule, Closure };

  Kind kind = Kind::Premise;
  std::optional<RuleId> rule;  // only for Kind::Rule; nullopt when omitted
  std::vector<int> refs;

  static Justification premise() { return {Kind::Premise, std::nullopt, {}}; }
  static Justification conclusion() { return {Kind::Conclusion, std::nullopt, {}}; }
  static Justification by_rule(std::optional<RuleId> rule, std::vector<int> refs) {
    return {Kind::Rule, rule, std::move(refs)};
  }
  static Justification closure(int m, int n) { return {Kind::Closure, std::nullopt, {m, n}}; }

  friend bool operator==(const Justification&, const Justification&) = default;
};

/// The `@` (falsum) content of a closure line.
struct Bottom {
  friend bool operator==(const Bottom&, const Bottom&) = default;
};

struct ProofLine {
  int number = 0;
  std::variant<SignedFormula, Bottom> content;
  Justification justification;
  int depth = 0;
  int block = 0;  // innermost block id; 0 is the root pseudo-block

  bool is_bottom() const { return std::holds_alternative<Bottom>(content); }
  const SignedFormula& signed_formula() const { return std::get<SignedFormula>(content); }

  friend bool operator==(const ProofLine&, const ProofLine&) = default;
};

/// A branch delimited by `{ }`. Block 0 is the root pseudo-block covering the
/// whole proof. `end_line` is the last line inside the block, including lines
/// of nested blocks.
struct Block {
  int id = 0;
  std::optional<int> parent;
  int start_line = 1;
  int end_line = 0;
  std::vector<int> children;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const Block&, const Block&) = default;
};

struct ProofScript {
  std::vector<ProofLine> lines;
  std::vector<Block> blocks{Block{}};

  const ProofLine& line(int number) const { return lines.at(static_cast<std::size_t>(number - 1)); }
  int line_count() const { return static_cast<int>(lines.size()); }
  const Block& block(int id) const { return blocks.at(static_cast<std::size_t>(id)); }
  bool is_ancestor_block(int ancestor, int block) const;
  /// Lines directly in the block (not in nested blocks), in order.
  std::vector<int> own_lines(int block) const;
  /// Leaf blocks in textual order.
  std::vector<int> leaf_blocks() const;

  friend bool operator==(const ProofScript&, const ProofScript&) = default;
};

/// Incrementally assembles a well-formed ProofScript. Lines get consecutive
/// numbers; blocks are opened before their first line and closed after
/// their last.
class ScriptBuilder {
 public:
  void open_block();
  void close_block();
  int add(SignedFormula sf, Justification just);
  int add_bottom(int m, int n);
  int depth() const { return static_cast<int>(open_.size()) - 1; }
  int pending_opens() const { return pending_; }
  ProofScript finish();

 private:
  int add_line(std::variant<SignedFormula, Bottom> content, Justification just);

  ProofScript script_;
  std::vector<int> open_{0};
  int pending_ = 0;
};

/// Parses the linear proof format, one proof line per text line:
///   [N.] {* (T|F) formula justification }*
///   [N.] {* @ m,n }*
/// where justification is `pre`, `conclusion`, or `[rule] n[,n...]`.
/// Blank lines and `#` comments are ignored. Throws ParseError.
ProofScript parse_proof(std::string_view text);

/// Canonical text: explicit numbers, one space of indentation per depth.
std::string serialize_proof(const ProofScript& script);

/// Lines referenceable from line n: earlier lines in n's branch.
std::vector<int> ancestors(const ProofScript& script, int n);

/// All lines on the branch ending at the given leaf block.
std::vector<int> branch_lines(const ProofScript& script, int leaf_block);

}  // namespace anita
