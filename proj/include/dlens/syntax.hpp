#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dlens {

/// Base for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed source reported with the 1-based position of the first offending token.
class SourceError : public Error {
 public:
  SourceError(const std::string& what, std::uint32_t line, std::uint32_t column);
  std::uint32_t line() const { return line_; }
  std::uint32_t column() const { return column_; }

 private:
  std::uint32_t line_;
  std::uint32_t column_;
};

class LexError : public SourceError {
 public:
  using SourceError::SourceError;
};

class ParseError : public SourceError {
 public:
  using SourceError::SourceError;
};

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  Operator,
  Separator,
  NumericLiteral,
  StringLiteral,
  CharLiteral,
  BoolOrNullLiteral,
  EndOfFile,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string text;
  std::uint32_t line = 0;       // 1-based
  std::uint32_t column = 0;     // 1-based byte column of the first character
  std::uint32_t end_column = 0; // byte column one past the last character
  std::uint32_t offset = 0;     // byte offset into the source
};

/// Splits Java source into a comment-free token stream. The trailing
/// EndOfFile token is not included.
std::vector<Token> lex(std::string_view source);

// ---------------------------------------------------------------------------
// Syntax tree

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

struct Position {
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Half-open: `end` is the position just past the last character.
struct Span {
  Position begin;
  Position end;
  bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

enum class NodeKind : std::uint8_t {
  CompilationUnit,
  PackageDecl,
  ImportDecl,
  ClassDecl,       // class, interface, enum, annotation type; anonymous class bodies too
  EnumConstant,
  MethodDecl,      // methods and constructors
  Initializer,     // instance and static initializer blocks
  FieldDecl,
  VarDeclarator,
  Parameter,
  Annotation,

  // statements
  Block,
  LocalVarDecl,
  LocalClassDecl,
  ExprStmt,
  If,
  Else,
  For,
  ForEach,
  While,
  DoWhile,
  Switch,
  SwitchCase,
  Try,
  Resource,
  Catch,
  Finally,
  Return,
  Break,
  Continue,
  Throw,
  Labeled,
  Synchronized,
  Assert,
  Empty,

  // expressions
  Binary,
  Assign,
  Conditional,
  PrefixUnary,
  PostfixUnary,
  Parenthesized,
  Cast,
  InstanceOf,
  Lambda,
  MethodRef,
  MethodCall,
  FieldAccess,
  ArrayAccess,
  NewObject,
  NewArray,
  ArrayInit,
  Name,
  This,
  Super,
  ClassLiteral,
  NumericLiteral,
  StringLiteral,
  CharLiteral,
  BoolLiteral,
  NullLiteral,
};

std::string_view to_string(NodeKind kind);

bool is_expression(NodeKind kind);

enum class OpKind : std::uint8_t {
  // binary
  Add, Sub, Mul, Div, Rem,
  Shl, Shr, UShr,
  Lt, Gt, Le, Ge, InstanceOf,
  Eq, Ne,
  BitAnd, BitXor, BitOr,
  LogAnd, LogOr,
  // ternary
  Conditional,
  // assignment
  Assign, AddAssign, SubAssign, MulAssign, DivAssign, RemAssign,
  AndAssign, OrAssign, XorAssign, ShlAssign, ShrAssign, UShrAssign,
};

std::string_view to_string(OpKind op);

/// Precedence families used when judging whether operators are mixed.
enum class OpClass : std::uint8_t {
  Arithmetic,
  Shift,
  Relational,
  Equality,
  Bitwise,
  Logical,
  Ternary,
  Assignment,
};

OpClass op_class(OpKind op);

namespace modifier {
inline constexpr std::uint32_t kPublic = 1u << 0;
inline constexpr std::uint32_t kProtected = 1u << 1;
inline constexpr std::uint32_t kPrivate = 1u << 2;
inline constexpr std::uint32_t kStatic = 1u << 3;
inline constexpr std::uint32_t kFinal = 1u << 4;
inline constexpr std::uint32_t kAbstract = 1u << 5;
inline constexpr std::uint32_t kNative = 1u << 6;
inline constexpr std::uint32_t kSynchronized = 1u << 7;
inline constexpr std::uint32_t kTransient = 1u << 8;
inline constexpr std::uint32_t kVolatile = 1u << 9;
inline constexpr std::uint32_t kStrictfp = 1u << 10;
inline constexpr std::uint32_t kDefault = 1u << 11;
}  // namespace modifier

/// One node of the tree. Child order is fixed per kind:
///   If:        condition, then-statement, [Else]
///   Else:      statement (an If for `else if`)
///   For:       init..., [condition], update..., body  (roles not tagged; body is last)
///   ForEach:   Parameter, iterable, body
///   While:     condition, body
///   DoWhile:   body, condition
///   Switch:    selector, SwitchCase...
///   SwitchCase: labels..., statements...  (`text` is "default" for the default label)
///   Try:       Resource..., Block, Catch..., [Finally]
///   Catch:     Parameter, Block
///   Conditional: condition, then-value, else-value
///   Binary/Assign: left, right
struct SyntaxNode {
  NodeKind kind = NodeKind::Empty;
  Span span;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  /// Set exactly for Binary, InstanceOf, Assign and Conditional nodes.
  std::optional<OpKind> op;
  /// Set for the bodies of If (then branch), Else (unless `else if`),
  /// For, ForEach, While and DoWhile.
  std::optional<bool> has_braces;
  /// Identifier, literal lexeme, unary operator, label or declared name.
  std::string text;
  std::uint32_t modifiers = 0;
};

struct SourceLine {
  std::string text;               // raw text without the line terminator
  std::size_t byte_length = 0;
  /// Characters up to the end of the last token on the line; 0 for blank
  /// and comment-only lines.
  std::size_t code_length = 0;
};

class SyntaxUnit {
 public:
  SyntaxUnit() = default;
  SyntaxUnit(std::string path, std::vector<SyntaxNode> nodes, std::vector<Token> tokens,
             std::vector<SourceLine> lines);

  const std::string& path() const { return path_; }
  NodeId root() const { return 0; }
  const SyntaxNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<SyntaxNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::vector<SourceLine>& source_lines() const { return lines_; }

  /// Method, constructor and initializer nodes, in source order, including nested ones.
  std::vector<NodeId> methods() const;

  /// True when `ancestor` lies on the parent chain of `id` (or is `id`).
  bool is_ancestor(NodeId ancestor, NodeId id) const;

 private:
  std::string path_;
  std::vector<SyntaxNode> nodes_;  // preorder; root at index 0
  std::vector<Token> tokens_;
  std::vector<SourceLine> lines_;
};

/// Parses a Java 8 compilation unit. Throws LexError or ParseError; never
/// returns a partial tree.
SyntaxUnit parse(std::string_view source, std::string path = {});

/// Top-level scoring unit (method, constructor, initializer block or field
/// declaration) that owns `id`, or kNoNode outside any of them. Members of
/// anonymous and local classes belong to the unit that declares the class.
NodeId enclosing_unit(const SyntaxUnit& unit, NodeId id);

/// Number of nesting structures (if/else branches, loops, switch, catch,
/// ternary, lambda, nested method) enclosing `id` inside its scoring unit.
/// Statements directly in a method body have depth 0. `else if` keeps the
/// depth of the `if` it continues.
int nesting_depth(const SyntaxUnit& unit, NodeId id);

/// True when `id` is the If node of an `else if`.
bool is_else_if(const SyntaxUnit& unit, NodeId id);

}  // namespace dlens
