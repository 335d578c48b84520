#include "anita/proof_script.hpp"

#include <array>
#include <cctype>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace anita {

namespace {

struct RuleInfo {
  RuleId id;
  std::string_view name;
  std::string_view title;
  RuleClass cls;
};

constexpr std::array<RuleInfo, 12> kRules{{
    {RuleId::NotT, "~T", "negation-true", RuleClass::Alpha},
    {RuleId::NotF, "~F", "negation-false", RuleClass::Alpha},
    {RuleId::AndT, "&T", "and-true", RuleClass::Alpha},
    {RuleId::AndF, "&F", "and-false", RuleClass::Beta},
    {RuleId::OrT, "|T", "or-true", RuleClass::Beta},
    {RuleId::OrF, "|F", "or-false", RuleClass::Alpha},
    {RuleId::ImpT, "->T", "implication-true", RuleClass::Beta},
    {RuleId::ImpF, "->F", "implication-false", RuleClass::Alpha},
    {RuleId::AllT, "AT", "universal-true", RuleClass::Gamma},
    {RuleId::AllF, "AF", "universal-false", RuleClass::Delta},
    {RuleId::ExT, "ET", "existential-true", RuleClass::Delta},
    {RuleId::ExF, "EF", "existential-false", RuleClass::Gamma},
}};

const RuleInfo& info(RuleId r) { return kRules[static_cast<std::size_t>(r)]; }

}  // namespace

std::string_view rule_name(RuleId r) { return info(r).name; }
std::string_view rule_title(RuleId r) { return info(r).title; }
RuleClass rule_class(RuleId r) { return info(r).cls; }

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (const auto& r : kRules)
    if (r.name == name) return r.id;
  return std::nullopt;
}

std::optional<RuleId> rule_for(const SignedFormula& sf) {
  bool t = sf.sign == Sign::True;
  switch (sf.formula.kind()) {
    case Connective::Atom:
      return std::nullopt;
    case Connective::Not:
      return t ? RuleId::NotT : RuleId::NotF;
    case Connective::And:
      return t ? RuleId::AndT : RuleId::AndF;
    case Connective::Or:
      return t ? RuleId::OrT : RuleId::OrF;
    case Connective::Implies:
      return t ? RuleId::ImpT : RuleId::ImpF;
    case Connective::ForAll:
      return t ? RuleId::AllT : RuleId::AllF;
    case Connective::Exists:
      return t ? RuleId::ExT : RuleId::ExF;
  }
  return std::nullopt;
}

// ---------- ProofScript ----------

bool ProofScript::is_ancestor_block(int ancestor, int b) const {
  for (std::optional<int> cur = b; cur; cur = block(*cur).parent)
    if (*cur == ancestor) return true;
  return false;
}

std::vector<int> ProofScript::own_lines(int b) const {
  std::vector<int> out;
  for (const auto& l : lines)
    if (l.block == b) out.push_back(l.number);
  return out;
}

std::vector<int> ProofScript::leaf_blocks() const {
  std::vector<int> out;
  for (const auto& b : blocks)
    if (b.is_leaf()) out.push_back(b.id);
  return out;
}

std::vector<int> ancestors(const ProofScript& script, int n) {
  std::vector<int> out;
  int target = script.line(n).block;
  for (int m = 1; m < n; ++m)
    if (script.is_ancestor_block(script.line(m).block, target)) out.push_back(m);
  return out;
}

std::vector<int> branch_lines(const ProofScript& script, int leaf_block) {
  std::vector<int> out;
  for (const auto& l : script.lines)
    if (script.is_ancestor_block(l.block, leaf_block)) out.push_back(l.number);
  return out;
}

// ---------- ScriptBuilder ----------

void ScriptBuilder::open_block() { ++pending_; }

void ScriptBuilder::close_block() {
  if (pending_ > 0) throw std::logic_error("empty branch: '{' immediately followed by '}'");
  if (open_.size() <= 1) throw std::logic_error("'}' without matching '{'");
  open_.pop_back();
}

int ScriptBuilder::add(SignedFormula sf, Justification just) { return add_line(std::move(sf), std::move(just)); }

int ScriptBuilder::add_bottom(int m, int n) { return add_line(Bottom{}, Justification::closure(m, n)); }

int ScriptBuilder::add_line(std::variant<SignedFormula, Bottom> content, Justification just) {
  int number = script_.line_count() + 1;
  for (; pending_ > 0; --pending_) {
    int id = static_cast<int>(script_.blocks.size());
    int parent = open_.back();
    script_.blocks.push_back(Block{id, parent, number, number, {}});
    script_.blocks[static_cast<std::size_t>(parent)].children.push_back(id);
    open_.push_back(id);
  }
  for (int b : open_) script_.blocks[static_cast<std::size_t>(b)].end_line = number;
  script_.lines.push_back(ProofLine{number, std::move(content), std::move(just), depth(), open_.back()});
  return number;
}

ProofScript ScriptBuilder::finish() {
  if (pending_ > 0 || open_.size() > 1) throw std::logic_error("unclosed branch");
  script_.blocks[0].end_line = script_.line_count();
  return std::move(script_);
}

// ---------- Parsing ----------

namespace {

std::string trim_right(std::string_view s) {
  std::size_t e = s.size();
  while (e > 0 && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(0, e));
}

std::vector<int> parse_refs(const std::string& text) {
  std::vector<int> refs;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      refs.push_back(j - i > 9 ? -1 : std::stoi(text.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  return refs;
}

const std::regex& premise_re() {
  static const std::regex re(R"(^(.*\S)\s+(pre|conclusion)\s*$)");
  return re;
}

const std::regex& rule_re() {
  static const std::regex re(R"(^(.*?\S)\s+(?:(~T|~F|&T|&F|\|T|\|F|->T|->F|AT|AF|ET|EF)\s*)?(\d+(?:\s*,\s*\d+)*)\s*$)");
  return re;
}

const std::regex& closure_re() {
  static const std::regex re(R"(^\s*(?:([^\d\s]\S*?)\s*)?(\d+(?:\s*,\s*\d+)*)\s*$)");
  return re;
}

const std::regex& rule_like_re() {
  static const std::regex re(R"(^(.*\S)\s+([~&|\->A-Za-z]+)$)");
  return re;
}

class ProofParser {
 public:
  explicit ProofParser(std::string_view text) : text_(text) {}

  ProofScript run() {
    int physical = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      ++physical;
      std::string_view raw = text_.substr(pos, eol - pos);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      parse_line(physical, raw);
      pos = eol + 1;
    }
    if (builder_.pending_opens() > 0 || builder_.depth() > 0)
      throw ParseError(last_line_, last_open_column_, "unbalanced branch delimiter: '{' is never closed");
    return builder_.finish();
  }

 private:
  void open(int line, int col) {
    builder_.open_block();
    last_open_column_ = col;
    last_line_ = line;
  }

  void close(int line, int col) {
    try {
      builder_.close_block();
    } catch (const std::logic_error& e) {
      throw ParseError(line, col, std::string("unbalanced branch delimiter: ") + e.what());
    }
  }

  void parse_line(int line, std::string_view raw) {
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    };
    skip_ws();
    if (i == raw.size()) return;

    // Lines made only of braces.
    if (raw.find_first_not_of("{} \t") == std::string_view::npos) {
      for (std::size_t k = i; k < raw.size(); ++k) {
        if (raw[k] == '{') open(line, static_cast<int>(k) + 1);
        if (raw[k] == '}') close(line, static_cast<int>(k) + 1);
      }
      last_line_ = line;
      return;
    }

    std::optional<int> explicit_number;
    int number_col = 0;
    std::vector<int> open_cols;
    for (;;) {
      skip_ws();
      if (i < raw.size() && raw[i] == '{') {
        open_cols.push_back(static_cast<int>(i) + 1);
        ++i;
      } else if (i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i])) && !explicit_number) {
        std::size_t j = i;
        while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
        if (j >= raw.size() || raw[j] != '.')
          throw ParseError(line, static_cast<int>(j) + 1, "expected '.' after line number");
        number_col = static_cast<int>(i) + 1;
        explicit_number = j - i > 9 ? -1 : std::stoi(std::string(raw.substr(i, j - i)));
        i = j + 1;
      } else {
        break;
      }
    }

    // Trailing close braces.
    std::size_t end = raw.size();
    std::vector<int> close_cols;
    for (;;) {
      while (end > i && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
      if (end > i && raw[end - 1] == '}') {
        close_cols.insert(close_cols.begin(), static_cast<int>(end));
        --end;
      } else {
        break;
      }
    }
    std::string_view body = raw.substr(i, end - i);
    int body_col = static_cast<int>(i) + 1;
    if (body.empty()) throw ParseError(line, body_col, "expected a signed formula or '@'");

    int expected = next_number_;
    if (explicit_number && *explicit_number != expected)
      throw ParseError(line, number_col,
                       "line number " + std::to_string(*explicit_number) + " does not match its position " +
                           std::to_string(expected));

    for (int c : open_cols) open(line, c);

    if (body[0] == '@') {
      parse_closure(line, body.substr(1), body_col + 1);
    } else {
      parse_signed(line, body, body_col);
    }
    ++next_number_;
    last_line_ = line;
    for (int c : close_cols) close(line, c);
  }

  void parse_closure(int line, std::string_view rest, int col) {
    std::string s(rest);
    std::smatch m;
    if (!std::regex_match(s, m, closure_re()))
      throw ParseError(line, col, "'@' must be justified by two line references 'm,n'");
    if (m[1].matched)
      throw ParseError(line, col + static_cast<int>(m.position(1)),
                       "'@' takes no rule name, found '" + m[1].str() + "'");
    auto refs = parse_refs(m[2].str());
    if (refs.size() != 2)
      throw ParseError(line, col + static_cast<int>(m.position(2)),
                       "'@' must be justified by exactly two line references, found " + std::to_string(refs.size()));
    builder_.add_bottom(refs[0], refs[1]);
  }

  void parse_signed(int line, std::string_view body, int col) {
    Sign sign;
    if (body[0] == 'T') {
      sign = Sign::True;
    } else if (body[0] == 'F') {
      sign = Sign::False;
    } else {
      throw ParseError(line, col, "bad sign: expected 'T', 'F' or '@' at the start of a proof line");
    }
    if (body.size() < 2 || std::isalnum(static_cast<unsigned char>(body[1])))
      throw ParseError(line, col, "bad sign: the sign must be separated from the formula");
    std::string rest(body.substr(1));
    int rest_col = col + 1;

    std::smatch m;
    if (std::regex_match(rest, m, premise_re())) {
      Formula f = parse_formula(m[1].str(), line, rest_col);
      auto just = m[2].str() == "pre" ? Justification::premise() : Justification::conclusion();
      builder_.add(SignedFormula{sign, std::move(f)}, std::move(just));
      return;
    }
    if (!std::regex_match(rest, m, rule_re())) {
      throw ParseError(line, col + static_cast<int>(body.size()),
                       "missing justification: expected 'pre', 'conclusion' or line references");
    }
    auto refs = parse_refs(m[3].str());
    std::string formula_text = m[1].str();
    std::optional<RuleId> rule;
    if (m[2].matched) {
      rule = rule_from_name(m[2].str());
      try {
        Formula f = parse_formula(formula_text, line, rest_col);
        builder_.add(SignedFormula{sign, std::move(f)}, Justification::by_rule(rule, std::move(refs)));
        return;
      } catch (const ParseError&) {
        // The rule-like token may belong to the formula.
        formula_text = rest.substr(0, static_cast<std::size_t>(m.position(3)));
        rule.reset();
      }
    }
    try {
      Formula f = parse_formula(formula_text, line, rest_col);
      builder_.add(SignedFormula{sign, std::move(f)}, Justification::by_rule(rule, std::move(refs)));
    } catch (const ParseError& err) {
      std::smatch rm;
      std::string trimmed = trim_right(formula_text);
      if (std::regex_match(trimmed, rm, rule_like_re())) {
        bool prefix_ok = true;
        try {
          parse_formula(rm[1].str(), line, rest_col);
        } catch (const ParseError&) {
          prefix_ok = false;
        }
        if (prefix_ok)
          throw ParseError(line, rest_col + static_cast<int>(rm.position(2)),
                           "unknown rule name '" + rm[2].str() + "'");
      }
      throw;
    }
  }

  std::string_view text_;
  ScriptBuilder builder_;
  int next_number_ = 1;
  int last_line_ = 1;
  int last_open_column_ = 1;
};

}  // namespace

ProofScript parse_proof(std::string_view text) { return ProofParser(text).run(); }

// ---------- Serialization ----------

std::string serialize_proof(const ProofScript& script) {
  std::ostringstream os;
  for (const auto& l : script.lines) {
    int opens = 0;
    int closes = 0;
    for (const auto& b : script.blocks) {
      if (b.id == 0) continue;
      if (b.start_line == l.number) ++opens;
      if (b.end_line == l.number) ++closes;
    }
    os << std::string(static_cast<std::size_t>(l.depth), ' ') << l.number << ". ";
    for (int k = 0; k < opens; ++k) os << "{ ";
    if (l.is_bottom()) {
      os << '@';
    } else {
      os << format_signed(l.signed_formula());
    }
    const auto& j = l.justification;
    switch (j.kind) {
      case Justification::Kind::Premise:
        os << " pre";
        break;
      case Justification::Kind::Conclusion:
        os << " conclusion";
        break;
      case Justification::Kind::Rule:
      case Justification::Kind::Closure:
        os << ' ';
        if (j.rule) os << rule_name(*j.rule) << ' ';
        for (std::size_t k = 0; k < j.refs.size(); ++k) os << (k ? "," : "") << j.refs[k];
        break;
    }
    for (int k = 0; k < closes; ++k) os << " }";
    os << '\n';
  }
  return os.str();
}

}  // namespace anita
