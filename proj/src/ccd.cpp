#include "dlens/ccd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace dlens {

std::string_view to_string(Rule rule) {
  static constexpr std::array<std::string_view, 6> names = {"R1", "R2", "R3", "R4", "R5", "R6"};
  return names[static_cast<std::size_t>(rule)];
}

std::string_view to_string(Pattern pattern) {
  static constexpr std::array<std::string_view, 6> names = {"P1", "P2", "P3", "P4", "P5", "P6"};
  return names[static_cast<std::size_t>(pattern)];
}

std::vector<Pattern> PatternReport::present_set() const {
  std::vector<Pattern> out;
  for (Pattern p : kAllPatterns) {
    if (present(p)) out.push_back(p);
  }
  return out;
}

double numeric_literal_value(std::string_view lexeme) {
  std::string s;
  for (char c : lexeme) {
    if (c != '_') s += c;
  }
  bool hex = s.size() > 1 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X');
  bool bin = s.size() > 1 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B');
  char last = s.empty() ? '\0' : s.back();
  if (last == 'l' || last == 'L') {
    s.pop_back();
    last = '\0';
  }
  if (bin) return static_cast<double>(std::strtoull(s.c_str() + 2, nullptr, 2));
  if (hex) {
    bool is_float = s.find_first_of(".pP") != std::string::npos;
    if (!is_float) return static_cast<double>(std::strtoull(s.c_str() + 2, nullptr, 16));
    if (last == 'f' || last == 'F' || last == 'd' || last == 'D') s.pop_back();
    return std::strtod(s.c_str(), nullptr);
  }
  bool is_float = s.find_first_of(".eEfFdD") != std::string::npos;
  if (is_float) {
    if (last == 'f' || last == 'F' || last == 'd' || last == 'D') s.pop_back();
    return std::strtod(s.c_str(), nullptr);
  }
  if (s.size() > 1 && s[0] == '0') return static_cast<double>(std::strtoull(s.c_str(), nullptr, 8));
  return static_cast<double>(std::strtoull(s.c_str(), nullptr, 10));
}

namespace {

bool has_brace_flag(const SyntaxNode& n) {
  switch (n.kind) {
    case NodeKind::If:
    case NodeKind::Else:
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::While:
    case NodeKind::DoWhile: return n.has_braces.has_value();
    default: return false;
  }
}

bool is_r2_operator(const SyntaxNode& n) {
  return n.kind == NodeKind::Binary || n.kind == NodeKind::InstanceOf ||
         n.kind == NodeKind::Conditional;
}

// Layerings written without parentheses in ordinary code; every other
// pairing of distinct precedence classes counts as mixed.
bool conventional(OpClass outer, OpClass inner) {
  auto comparison = [](OpClass c) { return c == OpClass::Relational || c == OpClass::Equality; };
  if (comparison(outer)) return inner == OpClass::Arithmetic;
  if (outer == OpClass::Logical) return comparison(inner);
  if (outer == OpClass::Ternary) {
    return inner == OpClass::Arithmetic || comparison(inner) || inner == OpClass::Logical;
  }
  return false;
}

bool mixed_operator_site(const SyntaxUnit& unit, NodeId id) {
  const SyntaxNode& n = unit.node(id);
  if (!is_r2_operator(n) || n.parent == kNoNode) return false;
  const SyntaxNode& p = unit.node(n.parent);
  if (!is_r2_operator(p)) return false;
  OpClass outer = op_class(*p.op);
  OpClass inner = op_class(*n.op);
  return outer != inner && !conventional(outer, inner);
}

bool inline_assignment_site(const SyntaxUnit& unit, NodeId id) {
  const SyntaxNode& n = unit.node(id);
  if (n.kind != NodeKind::Assign) return false;
  NodeKind parent = unit.node(n.parent).kind;
  return parent != NodeKind::ExprStmt && parent != NodeKind::For && parent != NodeKind::Lambda;
}

bool literal_site(const SyntaxUnit& unit, NodeId id) {
  const SyntaxNode& n = unit.node(id);
  if (n.kind != NodeKind::NumericLiteral) return false;
  double v = numeric_literal_value(n.text);
  if (v == 0.0 || v == 1.0) return false;
  constexpr std::uint32_t kConstant = modifier::kStatic | modifier::kFinal;
  for (NodeId cur = n.parent; cur != kNoNode; cur = unit.node(cur).parent) {
    const SyntaxNode& a = unit.node(cur);
    if (a.kind == NodeKind::Annotation || a.kind == NodeKind::EnumConstant) return false;
    if (a.kind == NodeKind::FieldDecl) return (a.modifiers & kConstant) != kConstant;
    if (a.kind == NodeKind::MethodDecl || a.kind == NodeKind::Initializer) return true;
  }
  return true;
}

struct LongLine {
  Span span;
  double amount;
};

std::vector<LongLine> long_lines(const SyntaxUnit& unit, const CcdConfig& config) {
  std::vector<LongLine> out;
  if (config.line_threshold == 0) return out;
  const auto& lines = unit.source_lines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t len = lines[i].code_length;
    if (len <= config.line_threshold) continue;
    double q = static_cast<double>(len) / static_cast<double>(config.line_threshold);
    auto line = static_cast<std::uint32_t>(i + 1);
    out.push_back({Span{{line, 1}, {line, static_cast<std::uint32_t>(len + 1)}},
                   config.fractional_long_lines ? q : std::floor(q)});
  }
  return out;
}

bool is_deep_candidate(const SyntaxUnit& unit, NodeId id) {
  switch (unit.node(id).kind) {
    case NodeKind::If: return !is_else_if(unit, id);
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::While:
    case NodeKind::DoWhile:
    case NodeKind::Switch: return true;
    default: return false;
  }
}

}  // namespace

int block_depth(const SyntaxUnit& unit, NodeId id) {
  NodeId top = enclosing_unit(unit, id);
  int depth = 1;
  NodeId child = id;
  for (NodeId cur = unit.node(id).parent; cur != kNoNode && cur != top;
       cur = unit.node(cur).parent) {
    const SyntaxNode& p = unit.node(cur);
    switch (p.kind) {
      case NodeKind::If:
        if (p.children.size() > 1 && p.children[1] == child) ++depth;
        break;
      case NodeKind::Else:
        if (unit.node(child).kind != NodeKind::If) depth += 2;
        break;
      case NodeKind::For:
      case NodeKind::ForEach:
      case NodeKind::While:
      case NodeKind::DoWhile:
        if (p.has_braces.has_value() &&
            child == (p.kind == NodeKind::DoWhile ? p.children.front() : p.children.back()))
          ++depth;
        break;
      case NodeKind::SwitchCase: ++depth; break;
      default: break;
    }
    child = cur;
  }
  return depth;
}

CcdBreakdown cognitive_complexity_d(const SyntaxUnit& unit, const CcdConfig& config) {
  CcdBreakdown out;
  out.base = cognitive_complexity(unit);
  auto& incs = out.rule_increments;

  for (const auto& m : out.base.methods) {
    for (const auto& inc : m.increments) {
      if (inc.reason != "logical" && inc.reason != "jump" && inc.reason != "else" &&
          inc.reason != "else if" && inc.nesting >= 3) {
        incs.push_back({Rule::R1, inc.span, 3});
      }
    }
  }
  for (NodeId id = 0; id < unit.size(); ++id) {
    const SyntaxNode& n = unit.node(id);
    if (mixed_operator_site(unit, id)) incs.push_back({Rule::R2, n.span, 3});
    if (has_brace_flag(n) && !*n.has_braces) incs.push_back({Rule::R4, n.span, 4});
    if (inline_assignment_site(unit, id)) incs.push_back({Rule::R5, n.span, 4});
    if (literal_site(unit, id)) incs.push_back({Rule::R6, n.span, 1});
  }
  for (const auto& l : long_lines(unit, config)) incs.push_back({Rule::R3, l.span, l.amount});

  std::stable_sort(incs.begin(), incs.end(), [](const RuleIncrement& a, const RuleIncrement& b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    return a.rule < b.rule;
  });
  out.file_total = out.base.file_total;
  for (const auto& r : incs) out.file_total += r.amount;
  return out;
}

PatternReport detect_patterns(const SyntaxUnit& unit, const CcdConfig& config) {
  PatternReport out;
  out.path = unit.path();
  auto add = [&](Pattern p, Span s) { out.per_pattern[static_cast<std::size_t>(p)].push_back(s); };
  for (NodeId id = 0; id < unit.size(); ++id) {
    const SyntaxNode& n = unit.node(id);
    if (is_deep_candidate(unit, id) && block_depth(unit, id) >= kDeepBlockDepth) add(Pattern::P1, n.span);
    if (mixed_operator_site(unit, id)) add(Pattern::P2, n.span);
    if (has_brace_flag(n) && !*n.has_braces) add(Pattern::P4, n.span);
    if (inline_assignment_site(unit, id)) add(Pattern::P5, n.span);
    if (literal_site(unit, id)) add(Pattern::P6, n.span);
  }
  for (const auto& l : long_lines(unit, config)) add(Pattern::P3, l.span);
  return out;
}

}  // namespace dlens
