#include "dlens/syntax.hpp"

namespace dlens {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::CompilationUnit: return "compilation-unit";
    case NodeKind::PackageDecl: return "package";
    case NodeKind::ImportDecl: return "import";
    case NodeKind::ClassDecl: return "class";
    case NodeKind::EnumConstant: return "enum-constant";
    case NodeKind::MethodDecl: return "method";
    case NodeKind::Initializer: return "initializer";
    case NodeKind::FieldDecl: return "field";
    case NodeKind::VarDeclarator: return "declarator";
    case NodeKind::Parameter: return "parameter";
    case NodeKind::Annotation: return "annotation";
    case NodeKind::Block: return "block";
    case NodeKind::LocalVarDecl: return "local-var";
    case NodeKind::LocalClassDecl: return "local-class";
    case NodeKind::ExprStmt: return "expression-statement";
    case NodeKind::If: return "if";
    case NodeKind::Else: return "else";
    case NodeKind::For: return "for";
    case NodeKind::ForEach: return "foreach";
    case NodeKind::While: return "while";
    case NodeKind::DoWhile: return "do";
    case NodeKind::Switch: return "switch";
    case NodeKind::SwitchCase: return "case";
    case NodeKind::Try: return "try";
    case NodeKind::Resource: return "resource";
    case NodeKind::Catch: return "catch";
    case NodeKind::Finally: return "finally";
    case NodeKind::Return: return "return";
    case NodeKind::Break: return "break";
    case NodeKind::Continue: return "continue";
    case NodeKind::Throw: return "throw";
    case NodeKind::Labeled: return "labeled";
    case NodeKind::Synchronized: return "synchronized";
    case NodeKind::Assert: return "assert";
    case NodeKind::Empty: return "empty";
    case NodeKind::Binary: return "binary";
    case NodeKind::Assign: return "assign";
    case NodeKind::Conditional: return "ternary";
    case NodeKind::PrefixUnary: return "prefix";
    case NodeKind::PostfixUnary: return "postfix";
    case NodeKind::Parenthesized: return "parenthesized";
    case NodeKind::Cast: return "cast";
    case NodeKind::InstanceOf: return "instanceof";
    case NodeKind::Lambda: return "lambda";
    case NodeKind::MethodRef: return "method-ref";
    case NodeKind::MethodCall: return "call";
    case NodeKind::FieldAccess: return "field-access";
    case NodeKind::ArrayAccess: return "array-access";
    case NodeKind::NewObject: return "new";
    case NodeKind::NewArray: return "new-array";
    case NodeKind::ArrayInit: return "array-init";
    case NodeKind::Name: return "name";
    case NodeKind::This: return "this";
    case NodeKind::Super: return "super";
    case NodeKind::ClassLiteral: return "class-literal";
    case NodeKind::NumericLiteral: return "number";
    case NodeKind::StringLiteral: return "string";
    case NodeKind::CharLiteral: return "char";
    case NodeKind::BoolLiteral: return "bool";
    case NodeKind::NullLiteral: return "null";
  }
  return "?";
}

bool is_expression(NodeKind kind) { return kind >= NodeKind::Binary; }

std::string_view to_string(OpKind op) {
  switch (op) {
    case OpKind::Add: return "+";
    case OpKind::Sub: return "-";
    case OpKind::Mul: return "*";
    case OpKind::Div: return "/";
    case OpKind::Rem: return "%";
    case OpKind::Shl: return "<<";
    case OpKind::Shr: return ">>";
    case OpKind::UShr: return ">>>";
    case OpKind::Lt: return "<";
    case OpKind::Gt: return ">";
    case OpKind::Le: return "<=";
    case OpKind::Ge: return ">=";
    case OpKind::InstanceOf: return "instanceof";
    case OpKind::Eq: return "==";
    case OpKind::Ne: return "!=";
    case OpKind::BitAnd: return "&";
    case OpKind::BitXor: return "^";
    case OpKind::BitOr: return "|";
    case OpKind::LogAnd: return "&&";
    case OpKind::LogOr: return "||";
    case OpKind::Conditional: return "?:";
    case OpKind::Assign: return "=";
    case OpKind::AddAssign: return "+=";
    case OpKind::SubAssign: return "-=";
    case OpKind::MulAssign: return "*=";
    case OpKind::DivAssign: return "/=";
    case OpKind::RemAssign: return "%=";
    case OpKind::AndAssign: return "&=";
    case OpKind::OrAssign: return "|=";
    case OpKind::XorAssign: return "^=";
    case OpKind::ShlAssign: return "<<=";
    case OpKind::ShrAssign: return ">>=";
    case OpKind::UShrAssign: return ">>>=";
  }
  return "?";
}

OpClass op_class(OpKind op) {
  switch (op) {
    case OpKind::Add:
    case OpKind::Sub:
    case OpKind::Mul:
    case OpKind::Div:
    case OpKind::Rem: return OpClass::Arithmetic;
    case OpKind::Shl:
    case OpKind::Shr:
    case OpKind::UShr: return OpClass::Shift;
    case OpKind::Lt:
    case OpKind::Gt:
    case OpKind::Le:
    case OpKind::Ge:
    case OpKind::InstanceOf: return OpClass::Relational;
    case OpKind::Eq:
    case OpKind::Ne: return OpClass::Equality;
    case OpKind::BitAnd:
    case OpKind::BitXor:
    case OpKind::BitOr: return OpClass::Bitwise;
    case OpKind::LogAnd:
    case OpKind::LogOr: return OpClass::Logical;
    case OpKind::Conditional: return OpClass::Ternary;
    default: return OpClass::Assignment;
  }
}

SyntaxUnit::SyntaxUnit(std::string path, std::vector<SyntaxNode> nodes, std::vector<Token> tokens,
                       std::vector<SourceLine> lines)
    : path_(std::move(path)),
      nodes_(std::move(nodes)),
      tokens_(std::move(tokens)),
      lines_(std::move(lines)) {}

std::vector<NodeId> SyntaxUnit::methods() const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    NodeKind k = nodes_[id].kind;
    if (k == NodeKind::MethodDecl || k == NodeKind::Initializer) out.push_back(id);
  }
  return out;
}

bool SyntaxUnit::is_ancestor(NodeId ancestor, NodeId id) const {
  for (NodeId cur = id; cur != kNoNode; cur = nodes_.at(cur).parent) {
    if (cur == ancestor) return true;
  }
  return false;
}

namespace {

bool is_unit_kind(NodeKind k) {
  return k == NodeKind::MethodDecl || k == NodeKind::Initializer || k == NodeKind::FieldDecl;
}

std::size_t child_index(const SyntaxNode& parent, NodeId child) {
  for (std::size_t i = 0; i < parent.children.size(); ++i) {
    if (parent.children[i] == child) return i;
  }
  return parent.children.size();
}

// Whether `child` sits in a position of `parent` that is one nesting level deeper.
bool nests(const SyntaxUnit& unit, NodeId parent_id, NodeId child) {
  const SyntaxNode& p = unit.node(parent_id);
  std::size_t i = child_index(p, child);
  switch (p.kind) {
    case NodeKind::If: return i == 1;
    case NodeKind::Else: return unit.node(child).kind != NodeKind::If;
    case NodeKind::For: return i + 1 == p.children.size();
    case NodeKind::ForEach: return i == 2;
    case NodeKind::While: return i == 1;
    case NodeKind::DoWhile: return i == 0;
    case NodeKind::Switch: return i > 0;
    case NodeKind::Catch: return i == 1;
    case NodeKind::Conditional: return true;
    case NodeKind::Lambda: return i + 1 == p.children.size();
    case NodeKind::MethodDecl:
    case NodeKind::Initializer: return true;
    default: return false;
  }
}

}  // namespace

NodeId enclosing_unit(const SyntaxUnit& unit, NodeId id) {
  NodeId found = kNoNode;
  for (NodeId cur = id; cur != kNoNode; cur = unit.node(cur).parent) {
    if (is_unit_kind(unit.node(cur).kind)) found = cur;
  }
  return found;
}

int nesting_depth(const SyntaxUnit& unit, NodeId id) {
  NodeId top = enclosing_unit(unit, id);
  if (top == kNoNode || top == id) return 0;
  int depth = 0;
  NodeId child = id;
  for (NodeId cur = unit.node(id).parent; cur != kNoNode && cur != top;
       cur = unit.node(cur).parent) {
    if (nests(unit, cur, child)) ++depth;
    child = cur;
  }
  return depth;
}

bool is_else_if(const SyntaxUnit& unit, NodeId id) {
  const SyntaxNode& n = unit.node(id);
  return n.kind == NodeKind::If && n.parent != kNoNode &&
         unit.node(n.parent).kind == NodeKind::Else;
}

}  // namespace dlens
