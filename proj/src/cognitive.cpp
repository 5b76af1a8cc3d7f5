#include "dlens/cognitive.hpp"

namespace dlens {
namespace {

bool is_logical(const SyntaxNode& n) {
  return n.kind == NodeKind::Binary && (n.op == OpKind::LogAnd || n.op == OpKind::LogOr);
}

NodeId skip_parens_up(const SyntaxUnit& unit, NodeId id) {
  NodeId p = unit.node(id).parent;
  while (p != kNoNode && unit.node(p).kind == NodeKind::Parenthesized) p = unit.node(p).parent;
  return p;
}

// Operators of a maximal &&/|| tree in source order; parentheses are transparent.
void logical_ops(const SyntaxUnit& unit, NodeId id, std::vector<OpKind>& out) {
  const SyntaxNode& n = unit.node(id);
  if (n.kind == NodeKind::Parenthesized) {
    logical_ops(unit, n.children[0], out);
  } else if (is_logical(n)) {
    logical_ops(unit, n.children[0], out);
    out.push_back(*n.op);
    logical_ops(unit, n.children[1], out);
  }
}

std::string_view structure_reason(const SyntaxUnit& unit, NodeId id) {
  const SyntaxNode& n = unit.node(id);
  switch (n.kind) {
    case NodeKind::If: return is_else_if(unit, id) ? "else if" : "if";
    case NodeKind::Else:
      return unit.node(n.children[0]).kind == NodeKind::If ? std::string_view{} : "else";
    case NodeKind::Conditional: return "ternary";
    case NodeKind::Switch: return "switch";
    case NodeKind::For: return "for";
    case NodeKind::ForEach: return "foreach";
    case NodeKind::While: return "while";
    case NodeKind::DoWhile: return "do";
    case NodeKind::Catch: return "catch";
    default: return {};
  }
}

void score_node(const SyntaxUnit& unit, NodeId id, MethodScore& m) {
  const SyntaxNode& n = unit.node(id);
  std::string_view reason = structure_reason(unit, id);
  if (!reason.empty()) {
    Increment inc{id, n.span, std::string(reason), 0, 1};
    bool hybrid = n.kind == NodeKind::Else || reason == "else if";
    if (!hybrid) {
      inc.nesting = nesting_depth(unit, id);
      inc.amount += inc.nesting;
    }
    m.increments.push_back(std::move(inc));
  } else if ((n.kind == NodeKind::Break || n.kind == NodeKind::Continue) && !n.text.empty()) {
    m.increments.push_back({id, n.span, "jump", 0, 1});
  } else if (is_logical(n)) {
    NodeId up = skip_parens_up(unit, id);
    if (up == kNoNode || !is_logical(unit.node(up))) {
      std::vector<OpKind> ops;
      logical_ops(unit, id, ops);
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i == 0 || ops[i] != ops[i - 1]) m.increments.push_back({id, n.span, "logical", 0, 1});
      }
    }
  }
  for (NodeId c : n.children) score_node(unit, c, m);
}

}  // namespace

CcBreakdown cognitive_complexity(const SyntaxUnit& unit) {
  CcBreakdown out;
  for (NodeId id = 0; id < unit.size(); ++id) {
    const SyntaxNode& n = unit.node(id);
    bool unit_kind = n.kind == NodeKind::MethodDecl || n.kind == NodeKind::Initializer ||
                     n.kind == NodeKind::FieldDecl;
    if (!unit_kind || enclosing_unit(unit, id) != id) continue;
    MethodScore m;
    m.node = id;
    m.span = n.span;
    m.name = n.kind == NodeKind::Initializer ? (n.modifiers & modifier::kStatic ? "<clinit>" : "<init>")
                                             : n.text;
    for (NodeId c : n.children) score_node(unit, c, m);
    for (const auto& inc : m.increments) m.total += inc.amount;
    if (n.kind == NodeKind::FieldDecl && m.increments.empty()) continue;
    out.file_total += m.total;
    out.methods.push_back(std::move(m));
  }
  return out;
}

}  // namespace dlens
