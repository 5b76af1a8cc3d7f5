// Recursive-descent parser for Java 8 compilation units.
//
// Parsing builds a temporary owning tree, then flattens it in preorder into
// the arena held by SyntaxUnit. Ambiguities (local declaration vs expression,
// cast vs parenthesized expression, lambda parameters, generic method
// references) are settled with non-throwing lookahead scans that rewind.

#include <memory>
#include <utility>

#include "dlens/syntax.hpp"

namespace dlens {
namespace {

struct PNode;
using Ptr = std::unique_ptr<PNode>;

struct PNode {
  NodeKind kind;
  Span span;
  std::vector<Ptr> kids;
  std::optional<OpKind> op;
  std::optional<bool> has_braces;
  std::string text;
  std::uint32_t modifiers = 0;

  explicit PNode(NodeKind k) : kind(k) {}
  void add(Ptr child) {
    if (child) kids.push_back(std::move(child));
  }
};

Ptr node(NodeKind kind) { return std::make_unique<PNode>(kind); }

bool is_primitive(std::string_view w) {
  return w == "boolean" || w == "byte" || w == "char" || w == "short" || w == "int" ||
         w == "long" || w == "float" || w == "double";
}

std::optional<std::uint32_t> modifier_bit(std::string_view w) {
  using namespace modifier;
  if (w == "public") return kPublic;
  if (w == "protected") return kProtected;
  if (w == "private") return kPrivate;
  if (w == "static") return kStatic;
  if (w == "final") return kFinal;
  if (w == "abstract") return kAbstract;
  if (w == "native") return kNative;
  if (w == "synchronized") return kSynchronized;
  if (w == "transient") return kTransient;
  if (w == "volatile") return kVolatile;
  if (w == "strictfp") return kStrictfp;
  return std::nullopt;
}

std::optional<OpKind> assign_op(std::string_view t) {
  if (t == "=") return OpKind::Assign;
  if (t == "+=") return OpKind::AddAssign;
  if (t == "-=") return OpKind::SubAssign;
  if (t == "*=") return OpKind::MulAssign;
  if (t == "/=") return OpKind::DivAssign;
  if (t == "%=") return OpKind::RemAssign;
  if (t == "&=") return OpKind::AndAssign;
  if (t == "|=") return OpKind::OrAssign;
  if (t == "^=") return OpKind::XorAssign;
  if (t == "<<=") return OpKind::ShlAssign;
  if (t == ">>=") return OpKind::ShrAssign;
  if (t == ">>>=") return OpKind::UShrAssign;
  return std::nullopt;
}

struct BinaryOp {
  OpKind op;
  int precedence;
};

std::optional<BinaryOp> binary_op(std::string_view t) {
  if (t == "||") return BinaryOp{OpKind::LogOr, 1};
  if (t == "&&") return BinaryOp{OpKind::LogAnd, 2};
  if (t == "|") return BinaryOp{OpKind::BitOr, 3};
  if (t == "^") return BinaryOp{OpKind::BitXor, 4};
  if (t == "&") return BinaryOp{OpKind::BitAnd, 5};
  if (t == "==") return BinaryOp{OpKind::Eq, 6};
  if (t == "!=") return BinaryOp{OpKind::Ne, 6};
  if (t == "<") return BinaryOp{OpKind::Lt, 7};
  if (t == ">") return BinaryOp{OpKind::Gt, 7};
  if (t == "<=") return BinaryOp{OpKind::Le, 7};
  if (t == ">=") return BinaryOp{OpKind::Ge, 7};
  if (t == "<<") return BinaryOp{OpKind::Shl, 8};
  if (t == ">>") return BinaryOp{OpKind::Shr, 8};
  if (t == ">>>") return BinaryOp{OpKind::UShr, 8};
  if (t == "+") return BinaryOp{OpKind::Add, 9};
  if (t == "-") return BinaryOp{OpKind::Sub, 9};
  if (t == "*") return BinaryOp{OpKind::Mul, 10};
  if (t == "/") return BinaryOp{OpKind::Div, 10};
  if (t == "%") return BinaryOp{OpKind::Rem, 10};
  return std::nullopt;
}
constexpr int kInstanceOfPrecedence = 7;

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> tokens) : src_(src), toks_(std::move(tokens)) {
    Token eof;
    eof.kind = TokenKind::EndOfFile;
    if (toks_.empty()) {
      eof.line = 1;
      eof.column = 1;
    } else {
      eof.line = toks_.back().line;
      eof.column = toks_.back().end_column;
      eof.offset = toks_.back().offset + static_cast<std::uint32_t>(toks_.back().text.size());
    }
    eof.end_column = eof.column;
    toks_.push_back(std::move(eof));
  }

  Ptr compilation_unit() {
    auto cu = node(NodeKind::CompilationUnit);
    Position start{1, 1};
    cu->span.begin = start;

    // A package declaration may carry annotations; modifiers also lead type declarations.
    auto mark0 = mark();
    auto [bits0, annos0] = modifiers(false);
    if (is_kw("package")) {
      auto pkg = node(NodeKind::PackageDecl);
      pkg->span.begin = annos0.empty() ? here() : annos0.front()->span.begin;
      for (auto& a : annos0) pkg->add(std::move(a));
      bump();
      pkg->text = qualified_name();
      expect(";");
      finish(*pkg);
      cu->add(std::move(pkg));
    } else {
      reset(mark0);
    }
    while (is_kw("import")) {
      auto imp = node(NodeKind::ImportDecl);
      imp->span.begin = here();
      bump();
      std::size_t from = offset_here();
      if (is_kw("static")) bump();
      qualified_name();
      if (is_sym(".")) {
        bump();
        expect("*");
      }
      imp->text = std::string(src_.substr(from, last_end_offset_ - from));
      expect(";");
      finish(*imp);
      cu->add(std::move(imp));
    }
    while (!at_eof()) {
      if (is_sym(";")) {
        bump();
        continue;
      }
      Position begin = here();
      auto [bits, annos] = modifiers(true);
      if (!is_type_decl_start()) fail("expected type declaration");
      cu->add(type_declaration(begin, bits, std::move(annos)));
    }
    cu->span.end = last_end_;
    if (cu->span.end < start) cu->span.end = start;
    return cu;
  }

 private:
  struct Mark {
    std::size_t pos;
    int gt;
    Position last_end;
    std::size_t last_end_offset;
  };

  // ---- token access -------------------------------------------------------

  const Token& tok(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  std::string_view text(std::size_t ahead = 0) const {
    std::string_view t = tok(ahead).text;
    if (ahead == 0 && gt_ > 0) t.remove_prefix(static_cast<std::size_t>(gt_));
    return t;
  }
  bool at_eof() const { return tok().kind == TokenKind::EndOfFile; }
  bool is_sym(std::string_view s, std::size_t ahead = 0) const {
    TokenKind k = tok(ahead).kind;
    return (k == TokenKind::Operator || k == TokenKind::Separator) && text(ahead) == s;
  }
  bool is_kw(std::string_view s, std::size_t ahead = 0) const {
    return tok(ahead).kind == TokenKind::Keyword && tok(ahead).text == s;
  }
  bool is_ident(std::size_t ahead = 0) const {
    return tok(ahead).kind == TokenKind::Identifier;
  }
  bool starts_with_gt() const {
    return tok().kind == TokenKind::Operator && !text().empty() && text().front() == '>';
  }

  Position here() const {
    return {tok().line, tok().column + static_cast<std::uint32_t>(gt_)};
  }
  std::size_t offset_here() const { return tok().offset + static_cast<std::size_t>(gt_); }

  void bump() {
    const Token& t = tok();
    if (t.kind == TokenKind::EndOfFile) fail("unexpected end of input");
    last_end_ = {t.line, t.end_column};
    last_end_offset_ = t.offset + t.text.size();
    ++pos_;
    gt_ = 0;
  }

  // Consumes a single '>' even when the lexer produced `>>`, `>>>` or `>=`.
  void consume_gt() {
    if (text() == ">") {
      bump();
      return;
    }
    ++gt_;
    last_end_ = {tok().line, tok().column + static_cast<std::uint32_t>(gt_)};
    last_end_offset_ = tok().offset + static_cast<std::size_t>(gt_);
  }

  Mark mark() const { return {pos_, gt_, last_end_, last_end_offset_}; }
  void reset(const Mark& m) {
    pos_ = m.pos;
    gt_ = m.gt;
    last_end_ = m.last_end;
    last_end_offset_ = m.last_end_offset;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = tok();
    std::string got = t.kind == TokenKind::EndOfFile ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + got, t.line, t.column + static_cast<std::uint32_t>(gt_));
  }

  void expect(std::string_view s) {
    if (!is_sym(s) && !is_kw(s)) fail("expected '" + std::string(s) + "'");
    bump();
  }

  std::string expect_ident() {
    if (!is_ident()) fail("expected identifier");
    std::string name = tok().text;
    bump();
    return name;
  }

  void finish(PNode& n) { n.span.end = last_end_; }

  std::string source_since(std::size_t from) const {
    return std::string(src_.substr(from, last_end_offset_ - from));
  }

  std::string qualified_name() {
    std::size_t from = offset_here();
    expect_ident();
    while (is_sym(".") && is_ident(1)) {
      bump();
      bump();
    }
    return source_since(from);
  }

  // ---- non-throwing scanners (used for lookahead and for skipping types) --

  bool scan_balanced(std::string_view open, std::string_view close) {
    if (!is_sym(open)) return false;
    int depth = 0;
    while (!at_eof()) {
      if (is_sym(open)) ++depth;
      if (is_sym(close)) --depth;
      bump();
      if (depth == 0) return true;
    }
    return false;
  }

  bool scan_annotation() {
    if (!is_sym("@") || is_kw("interface", 1)) return false;
    bump();
    if (!is_ident()) return false;
    bump();
    while (is_sym(".") && is_ident(1)) {
      bump();
      bump();
    }
    if (is_sym("(")) return scan_balanced("(", ")");
    return true;
  }

  bool scan_annotations() {
    while (is_sym("@") && !is_kw("interface", 1)) {
      if (!scan_annotation()) return false;
    }
    return true;
  }

  bool scan_type_args() {
    if (!is_sym("<")) return false;
    bump();
    if (starts_with_gt()) {  // diamond
      consume_gt();
      return true;
    }
    while (true) {
      if (!scan_annotations()) return false;
      if (is_sym("?")) {
        bump();
        if (is_kw("extends") || is_kw("super")) {
          bump();
          if (!scan_type()) return false;
        }
      } else if (!scan_type()) {
        return false;
      }
      while (is_sym("&")) {
        bump();
        if (!scan_type()) return false;
      }
      if (is_sym(",")) {
        bump();
        continue;
      }
      if (starts_with_gt()) {
        consume_gt();
        return true;
      }
      return false;
    }
  }

  bool scan_class_type_no_dims() {
    if (!scan_annotations()) return false;
    if (is_kw("void") || (tok().kind == TokenKind::Keyword && is_primitive(tok().text))) {
      bump();
      return true;
    }
    if (!is_ident()) return false;
    bump();
    if (is_sym("<") && !scan_type_args()) return false;
    while (is_sym(".") && (is_ident(1) || is_sym("@", 1))) {
      bump();
      if (!scan_annotations() || !is_ident()) return false;
      bump();
      if (is_sym("<") && !scan_type_args()) return false;
    }
    return true;
  }

  bool scan_dims() {
    while (true) {
      auto m = mark();
      if (!scan_annotations()) return false;
      if (is_sym("[") && is_sym("]", 1)) {
        bump();
        bump();
        continue;
      }
      reset(m);
      return true;
    }
  }

  bool scan_type() {
    if (is_kw("void")) return false;
    return scan_class_type_no_dims() && scan_dims();
  }

  bool scan_type_params() {
    if (!is_sym("<")) return false;
    bump();
    while (true) {
      if (!scan_annotations() || !is_ident()) return false;
      bump();
      if (is_kw("extends")) {
        bump();
        if (!scan_type()) return false;
        while (is_sym("&")) {
          bump();
          if (!scan_type()) return false;
        }
      }
      if (is_sym(",")) {
        bump();
        continue;
      }
      if (starts_with_gt()) {
        consume_gt();
        return true;
      }
      return false;
    }
  }

  std::string parse_type() {
    std::size_t from = offset_here();
    if (!scan_type()) fail("expected type");
    return source_since(from);
  }

  // `Type ident` with `=`, `,`, `;`, `[` or `:` after the identifier.
  bool local_var_decl_ahead() {
    auto m = mark();
    bool ok = scan_type() && is_ident() &&
              (is_sym("=", 1) || is_sym(",", 1) || is_sym(";", 1) || is_sym("[", 1) ||
               is_sym(":", 1));
    reset(m);
    return ok;
  }

  bool lambda_ahead() {
    if (is_ident() && is_sym("->", 1)) return true;
    if (!is_sym("(")) return false;
    auto m = mark();
    bool ok = scan_balanced("(", ")") && is_sym("->");
    reset(m);
    return ok;
  }

  bool cast_ahead() {
    if (!is_sym("(")) return false;
    auto m = mark();
    bump();
    bool primitive = tok().kind == TokenKind::Keyword && is_primitive(tok().text);
    bool ok = scan_type();
    while (ok && !primitive && is_sym("&")) {
      bump();
      ok = scan_type();
    }
    ok = ok && is_sym(")");
    if (ok) {
      bump();
      if (!primitive) {
        const Token& t = tok();
        switch (t.kind) {
          case TokenKind::Identifier:
          case TokenKind::NumericLiteral:
          case TokenKind::StringLiteral:
          case TokenKind::CharLiteral:
          case TokenKind::BoolOrNullLiteral:
            break;
          case TokenKind::Keyword:
            ok = t.text == "this" || t.text == "super" || t.text == "new" || is_primitive(t.text);
            break;
          case TokenKind::Operator:
          case TokenKind::Separator:
            ok = t.text == "(" || t.text == "!" || t.text == "~";
            break;
          default:
            ok = false;
        }
      } else {
        ok = !at_eof();
      }
    }
    reset(m);
    return ok;
  }

  bool generic_method_ref_ahead() {
    auto m = mark();
    bool ok = scan_type() && is_sym("::");
    reset(m);
    return ok;
  }

  // ---- declarations -------------------------------------------------------

  std::pair<std::uint32_t, std::vector<Ptr>> modifiers(bool allow_default) {
    std::uint32_t bits = 0;
    std::vector<Ptr> annos;
    while (true) {
      if (is_sym("@") && !is_kw("interface", 1)) {
        annos.push_back(annotation());
      } else if (tok().kind == TokenKind::Keyword && modifier_bit(tok().text)) {
        // `synchronized (` opens a statement, not a modifier.
        if (is_kw("synchronized") && is_sym("(", 1)) break;
        bits |= *modifier_bit(tok().text);
        bump();
      } else if (allow_default && is_kw("default") && !is_sym(":", 1)) {
        bits |= modifier::kDefault;
        bump();
      } else {
        break;
      }
    }
    return {bits, std::move(annos)};
  }

  Ptr annotation() {
    auto a = node(NodeKind::Annotation);
    a->span.begin = here();
    expect("@");
    a->text = qualified_name();
    if (is_sym("(")) {
      bump();
      if (!is_sym(")")) {
        if (is_ident() && is_sym("=", 1)) {
          while (true) {
            bump();  // name
            bump();  // =
            a->add(element_value());
            if (!is_sym(",")) break;
            bump();
            if (!(is_ident() && is_sym("=", 1))) fail("expected element-value pair");
          }
        } else {
          a->add(element_value());
        }
      }
      expect(")");
    }
    finish(*a);
    return a;
  }

  Ptr element_value() {
    if (is_sym("@")) return annotation();
    if (is_sym("{")) {
      auto init = node(NodeKind::ArrayInit);
      init->span.begin = here();
      bump();
      while (!is_sym("}")) {
        init->add(element_value());
        if (!is_sym(",")) break;
        bump();
      }
      expect("}");
      finish(*init);
      return init;
    }
    return conditional();
  }

  bool is_type_decl_start() const {
    return is_kw("class") || is_kw("interface") || is_kw("enum") ||
           (is_sym("@") && is_kw("interface", 1));
  }

  Ptr type_declaration(Position begin, std::uint32_t bits, std::vector<Ptr> annos) {
    auto cls = node(NodeKind::ClassDecl);
    cls->span.begin = begin;
    cls->modifiers = bits;
    for (auto& a : annos) cls->add(std::move(a));

    bool is_interface = false;
    bool is_enum = false;
    if (is_sym("@")) {
      bump();
      bump();
      is_interface = true;
    } else if (is_kw("interface")) {
      bump();
      is_interface = true;
    } else if (is_kw("enum")) {
      bump();
      is_enum = true;
    } else {
      expect("class");
    }
    cls->text = expect_ident();
    if (is_sym("<") && !scan_type_params()) fail("malformed type parameters");
    if (is_kw("extends")) {
      bump();
      parse_type();
      while (is_sym(",")) {
        bump();
        parse_type();
      }
    }
    if (is_kw("implements")) {
      bump();
      parse_type();
      while (is_sym(",")) {
        bump();
        parse_type();
      }
    }
    if (is_enum) {
      enum_body(*cls);
    } else {
      class_body(*cls, is_interface);
    }
    finish(*cls);
    return cls;
  }

  void class_body(PNode& cls, bool is_interface) {
    expect("{");
    while (!is_sym("}")) {
      if (at_eof()) fail("expected '}'");
      cls.add(member(is_interface));
    }
    expect("}");
  }

  void enum_body(PNode& cls) {
    expect("{");
    while (!is_sym(";") && !is_sym("}")) {
      auto c = node(NodeKind::EnumConstant);
      c->span.begin = here();
      while (is_sym("@")) c->add(annotation());
      c->text = expect_ident();
      if (is_sym("(")) arguments(*c);
      if (is_sym("{")) {
        auto body = node(NodeKind::ClassDecl);
        body->span.begin = here();
        class_body(*body, false);
        finish(*body);
        c->add(std::move(body));
      }
      finish(*c);
      cls.add(std::move(c));
      if (!is_sym(",")) break;
      bump();
    }
    if (is_sym(";")) {
      bump();
      while (!is_sym("}")) {
        if (at_eof()) fail("expected '}'");
        cls.add(member(false));
      }
    }
    expect("}");
  }

  // Returns null for a stray `;`.
  Ptr member(bool is_interface) {
    if (is_sym(";")) {
      bump();
      return nullptr;
    }
    Position begin = here();
    if (is_sym("{") || (is_kw("static") && is_sym("{", 1))) {
      auto init = node(NodeKind::Initializer);
      init->span.begin = begin;
      if (is_kw("static")) {
        init->modifiers = modifier::kStatic;
        bump();
      }
      init->add(block());
      finish(*init);
      return init;
    }
    auto [bits, annos] = modifiers(true);
    if (is_type_decl_start()) return type_declaration(begin, bits, std::move(annos));
    if (is_interface) bits |= modifier::kPublic;

    if (is_sym("<") && !scan_type_params()) fail("malformed type parameters");

    if (is_ident() && is_sym("(", 1)) {
      auto ctor = node(NodeKind::MethodDecl);
      ctor->span.begin = begin;
      ctor->modifiers = bits;
      for (auto& a : annos) ctor->add(std::move(a));
      ctor->text = expect_ident();
      method_rest(*ctor);
      return ctor;
    }

    if (is_kw("void")) {
      bump();
    } else {
      parse_type();
    }
    std::string name = expect_ident();
    if (is_sym("(")) {
      auto m = node(NodeKind::MethodDecl);
      m->span.begin = begin;
      m->modifiers = bits;
      for (auto& a : annos) m->add(std::move(a));
      m->text = std::move(name);
      method_rest(*m);
      return m;
    }

    auto field = node(NodeKind::FieldDecl);
    field->span.begin = begin;
    // Interface fields are implicitly public static final.
    field->modifiers = is_interface ? (bits | modifier::kStatic | modifier::kFinal) : bits;
    for (auto& a : annos) field->add(std::move(a));
    field->add(declarator_rest(std::move(name), begin_of_previous_ident()));
    while (is_sym(",")) {
      bump();
      Position b = here();
      field->add(declarator_rest(expect_ident(), b));
    }
    expect(";");
    finish(*field);
    field->text = field->kids.empty() ? "" : field->kids.back()->text;
    return field;
  }

  Position begin_of_previous_ident() const {
    const Token& t = toks_[pos_ - 1];
    return {t.line, t.column};
  }

  void method_rest(PNode& m) {
    formal_parameters(m);
    scan_dims();
    if (is_kw("throws")) {
      bump();
      parse_type();
      while (is_sym(",")) {
        bump();
        parse_type();
      }
    }
    if (is_kw("default")) {  // annotation type element
      bump();
      m.add(element_value());
    }
    if (is_sym("{")) {
      m.add(block());
    } else {
      expect(";");
    }
    finish(m);
  }

  void formal_parameters(PNode& owner) {
    expect("(");
    while (!is_sym(")")) {
      owner.add(formal_parameter());
      if (!is_sym(",")) break;
      bump();
    }
    expect(")");
  }

  Ptr formal_parameter() {
    auto p = node(NodeKind::Parameter);
    p->span.begin = here();
    auto [bits, annos] = modifiers(false);
    p->modifiers = bits;
    for (auto& a : annos) p->add(std::move(a));
    parse_type();
    if (is_sym("...")) bump();
    if (is_kw("this")) {
      bump();
      p->text = "this";
    } else {
      p->text = expect_ident();
    }
    scan_dims();
    finish(*p);
    return p;
  }

  Ptr declarator_rest(std::string name, Position begin) {
    auto d = node(NodeKind::VarDeclarator);
    d->span.begin = begin;
    d->text = std::move(name);
    scan_dims();
    if (is_sym("=")) {
      bump();
      d->add(variable_initializer());
    }
    finish(*d);
    return d;
  }

  Ptr variable_initializer() {
    if (is_sym("{")) return array_init();
    return expression();
  }

  Ptr array_init() {
    auto init = node(NodeKind::ArrayInit);
    init->span.begin = here();
    expect("{");
    while (!is_sym("}")) {
      init->add(variable_initializer());
      if (!is_sym(",")) break;
      bump();
    }
    expect("}");
    finish(*init);
    return init;
  }

  // ---- statements ---------------------------------------------------------

  Ptr block() {
    auto b = node(NodeKind::Block);
    b->span.begin = here();
    expect("{");
    while (!is_sym("}")) {
      if (at_eof()) fail("expected '}'");
      b->add(block_statement());
    }
    expect("}");
    finish(*b);
    return b;
  }

  Ptr local_var_decl_rest(Position begin, std::uint32_t bits, std::vector<Ptr> annos) {
    auto decl = node(NodeKind::LocalVarDecl);
    decl->span.begin = begin;
    decl->modifiers = bits;
    for (auto& a : annos) decl->add(std::move(a));
    decl->text = parse_type();
    do {
      if (!decl->kids.empty() && decl->kids.back()->kind == NodeKind::VarDeclarator) bump();
      Position b = here();
      decl->add(declarator_rest(expect_ident(), b));
    } while (is_sym(","));
    finish(*decl);
    return decl;
  }

  Ptr block_statement() {
    Position begin = here();
    if (is_ident() && is_sym(":", 1)) return statement();
    if (is_kw("class") || is_kw("interface") || is_kw("enum")) {
      auto local = node(NodeKind::LocalClassDecl);
      local->span.begin = begin;
      local->add(type_declaration(begin, 0, {}));
      finish(*local);
      return local;
    }
    if (is_kw("final") || is_kw("abstract") || is_kw("strictfp") ||
        (is_sym("@") && !is_kw("interface", 1))) {
      auto [bits, annos] = modifiers(false);
      if (is_type_decl_start()) {
        auto local = node(NodeKind::LocalClassDecl);
        local->span.begin = begin;
        local->add(type_declaration(begin, bits, std::move(annos)));
        finish(*local);
        return local;
      }
      auto decl = local_var_decl_rest(begin, bits, std::move(annos));
      expect(";");
      finish(*decl);
      return decl;
    }
    if (local_var_decl_ahead()) {
      auto decl = local_var_decl_rest(begin, 0, {});
      expect(";");
      finish(*decl);
      return decl;
    }
    return statement();
  }

  Ptr body_statement(PNode& owner) {
    auto body = statement();
    owner.has_braces = body->kind == NodeKind::Block;
    return body;
  }

  Ptr paren_expression() {
    expect("(");
    auto e = expression();
    expect(")");
    return e;
  }

  Ptr statement() {
    Position begin = here();
    if (is_sym("{")) return block();
    if (is_sym(";")) {
      auto e = node(NodeKind::Empty);
      e->span.begin = begin;
      bump();
      finish(*e);
      return e;
    }
    if (is_ident() && is_sym(":", 1)) {
      auto l = node(NodeKind::Labeled);
      l->span.begin = begin;
      l->text = expect_ident();
      bump();
      l->add(statement());
      finish(*l);
      return l;
    }
    if (tok().kind == TokenKind::Keyword) {
      const std::string& kw = tok().text;
      if (kw == "if") return if_statement();
      if (kw == "for") return for_statement();
      if (kw == "while") {
        auto w = node(NodeKind::While);
        w->span.begin = begin;
        bump();
        w->add(paren_expression());
        w->add(body_statement(*w));
        finish(*w);
        return w;
      }
      if (kw == "do") {
        auto d = node(NodeKind::DoWhile);
        d->span.begin = begin;
        bump();
        d->add(body_statement(*d));
        expect("while");
        d->add(paren_expression());
        expect(";");
        finish(*d);
        return d;
      }
      if (kw == "switch") return switch_statement();
      if (kw == "try") return try_statement();
      if (kw == "return" || kw == "throw") {
        auto r = node(kw == "return" ? NodeKind::Return : NodeKind::Throw);
        r->span.begin = begin;
        bool is_throw = kw == "throw";
        bump();
        if (is_throw || !is_sym(";")) r->add(expression());
        expect(";");
        finish(*r);
        return r;
      }
      if (kw == "break" || kw == "continue") {
        auto j = node(kw == "break" ? NodeKind::Break : NodeKind::Continue);
        j->span.begin = begin;
        bump();
        if (is_ident()) j->text = expect_ident();
        expect(";");
        finish(*j);
        return j;
      }
      if (kw == "synchronized") {
        auto s = node(NodeKind::Synchronized);
        s->span.begin = begin;
        bump();
        s->add(paren_expression());
        s->add(block());
        finish(*s);
        return s;
      }
      if (kw == "assert") {
        auto a = node(NodeKind::Assert);
        a->span.begin = begin;
        bump();
        a->add(expression());
        if (is_sym(":")) {
          bump();
          a->add(expression());
        }
        expect(";");
        finish(*a);
        return a;
      }
      if (kw == "else") fail("'else' without 'if'");
      if (kw == "case" || kw == "default") fail("case label outside switch");
    }
    auto stmt = node(NodeKind::ExprStmt);
    stmt->span.begin = begin;
    stmt->add(expression());
    expect(";");
    finish(*stmt);
    return stmt;
  }

  Ptr if_statement() {
    auto i = node(NodeKind::If);
    i->span.begin = here();
    expect("if");
    i->add(paren_expression());
    i->add(body_statement(*i));
    if (is_kw("else")) {
      auto e = node(NodeKind::Else);
      e->span.begin = here();
      bump();
      auto body = statement();
      if (body->kind != NodeKind::If) e->has_braces = body->kind == NodeKind::Block;
      e->add(std::move(body));
      finish(*e);
      i->add(std::move(e));
    }
    finish(*i);
    return i;
  }

  Ptr for_statement() {
    Position begin = here();
    expect("for");
    expect("(");

    // Enhanced for: [modifiers] Type name :
    {
      auto m = mark();
      auto [bits, annos] = modifiers(false);
      Position pbegin = annos.empty() ? here() : annos.front()->span.begin;
      if (local_var_decl_ahead()) {
        auto m2 = mark();
        scan_type();
        bump();  // name
        scan_dims();
        bool enhanced = is_sym(":");
        reset(m2);
        if (enhanced) {
          auto f = node(NodeKind::ForEach);
          f->span.begin = begin;
          auto p = node(NodeKind::Parameter);
          p->span.begin = pbegin;
          p->modifiers = bits;
          for (auto& a : annos) p->add(std::move(a));
          parse_type();
          p->text = expect_ident();
          scan_dims();
          finish(*p);
          f->add(std::move(p));
          expect(":");
          f->add(expression());
          expect(")");
          f->add(body_statement(*f));
          finish(*f);
          return f;
        }
      }
      reset(m);
    }

    auto f = node(NodeKind::For);
    f->span.begin = begin;
    if (!is_sym(";")) {
      Position dbegin = here();
      if (is_kw("final") || is_sym("@")) {
        auto [bits, annos] = modifiers(false);
        f->add(local_var_decl_rest(dbegin, bits, std::move(annos)));
      } else if (local_var_decl_ahead()) {
        f->add(local_var_decl_rest(dbegin, 0, {}));
      } else {
        f->add(expression());
        while (is_sym(",")) {
          bump();
          f->add(expression());
        }
      }
    }
    expect(";");
    if (!is_sym(";")) f->add(expression());
    expect(";");
    if (!is_sym(")")) {
      f->add(expression());
      while (is_sym(",")) {
        bump();
        f->add(expression());
      }
    }
    expect(")");
    f->add(body_statement(*f));
    finish(*f);
    return f;
  }

  Ptr switch_statement() {
    auto s = node(NodeKind::Switch);
    s->span.begin = here();
    expect("switch");
    s->add(paren_expression());
    expect("{");
    while (!is_sym("}")) {
      if (!is_kw("case") && !is_kw("default")) fail("expected 'case' or 'default'");
      auto c = node(NodeKind::SwitchCase);
      c->span.begin = here();
      while (is_kw("case") || is_kw("default")) {
        if (is_kw("default")) {
          bump();
          c->text = "default";
        } else {
          bump();
          c->add(conditional());
        }
        expect(":");
      }
      while (!is_kw("case") && !is_kw("default") && !is_sym("}")) {
        if (at_eof()) fail("expected '}'");
        c->add(block_statement());
      }
      finish(*c);
      s->add(std::move(c));
    }
    expect("}");
    finish(*s);
    return s;
  }

  Ptr try_statement() {
    auto t = node(NodeKind::Try);
    t->span.begin = here();
    expect("try");
    if (is_sym("(")) {
      bump();
      while (!is_sym(")")) {
        auto r = node(NodeKind::Resource);
        r->span.begin = here();
        auto [bits, annos] = modifiers(false);
        r->modifiers = bits;
        for (auto& a : annos) r->add(std::move(a));
        parse_type();
        r->text = expect_ident();
        expect("=");
        r->add(expression());
        finish(*r);
        t->add(std::move(r));
        if (!is_sym(";")) break;
        bump();
      }
      expect(")");
    }
    t->add(block());
    while (is_kw("catch")) {
      auto c = node(NodeKind::Catch);
      c->span.begin = here();
      bump();
      expect("(");
      auto p = node(NodeKind::Parameter);
      p->span.begin = here();
      auto [bits, annos] = modifiers(false);
      p->modifiers = bits;
      for (auto& a : annos) p->add(std::move(a));
      parse_type();
      while (is_sym("|")) {
        bump();
        parse_type();
      }
      p->text = expect_ident();
      finish(*p);
      c->add(std::move(p));
      expect(")");
      c->add(block());
      finish(*c);
      t->add(std::move(c));
    }
    if (is_kw("finally")) {
      auto f = node(NodeKind::Finally);
      f->span.begin = here();
      bump();
      f->add(block());
      finish(*f);
      t->add(std::move(f));
    }
    if (t->kids.size() == 1 || (t->kids.back()->kind != NodeKind::Catch &&
                                t->kids.back()->kind != NodeKind::Finally &&
                                t->kids.front()->kind != NodeKind::Resource)) {
      fail("expected 'catch' or 'finally'");
    }
    finish(*t);
    return t;
  }

  // ---- expressions --------------------------------------------------------

  Ptr expression() {
    if (lambda_ahead()) return lambda();
    auto lhs = conditional();
    if (tok().kind == TokenKind::Operator) {
      if (auto op = assign_op(text())) {
        bump();
        auto a = node(NodeKind::Assign);
        a->op = *op;
        a->span.begin = lhs->span.begin;
        a->add(std::move(lhs));
        a->add(expression());
        finish(*a);
        return a;
      }
    }
    return lhs;
  }

  Ptr lambda() {
    auto l = node(NodeKind::Lambda);
    l->span.begin = here();
    if (is_ident()) {
      auto p = node(NodeKind::Parameter);
      p->span.begin = here();
      p->text = expect_ident();
      finish(*p);
      l->add(std::move(p));
    } else {
      // Inferred parameters are bare identifiers; otherwise formal parameters.
      auto m = mark();
      bump();
      bool inferred = true;
      while (!is_sym(")")) {
        if (!is_ident() || !(is_sym(",", 1) || is_sym(")", 1))) {
          inferred = false;
          break;
        }
        bump();
        if (is_sym(",")) bump();
      }
      reset(m);
      if (inferred) {
        bump();
        while (!is_sym(")")) {
          auto p = node(NodeKind::Parameter);
          p->span.begin = here();
          p->text = expect_ident();
          finish(*p);
          l->add(std::move(p));
          if (is_sym(",")) bump();
        }
        bump();
      } else {
        formal_parameters(*l);
      }
    }
    expect("->");
    if (is_sym("{")) {
      l->add(block());
    } else {
      l->add(expression());
    }
    finish(*l);
    return l;
  }

  Ptr conditional() {
    auto cond = binary(1);
    if (!is_sym("?")) return cond;
    auto c = node(NodeKind::Conditional);
    c->op = OpKind::Conditional;
    c->span.begin = cond->span.begin;
    c->add(std::move(cond));
    bump();
    c->add(expression());
    expect(":");
    c->add(lambda_ahead() ? lambda() : conditional());
    finish(*c);
    return c;
  }

  Ptr binary(int min_prec) {
    auto left = unary();
    while (true) {
      if (is_kw("instanceof")) {
        if (kInstanceOfPrecedence < min_prec) break;
        bump();
        auto n = node(NodeKind::InstanceOf);
        n->op = OpKind::InstanceOf;
        n->span.begin = left->span.begin;
        n->add(std::move(left));
        if (is_kw("final")) bump();
        n->text = parse_type();
        finish(*n);
        left = std::move(n);
        continue;
      }
      if (tok().kind != TokenKind::Operator || gt_ != 0) break;
      auto op = binary_op(text());
      if (!op || op->precedence < min_prec) break;
      bump();
      auto right = binary(op->precedence + 1);
      auto n = node(NodeKind::Binary);
      n->op = op->op;
      n->span.begin = left->span.begin;
      n->add(std::move(left));
      n->add(std::move(right));
      finish(*n);
      left = std::move(n);
    }
    return left;
  }

  Ptr unary() {
    if (tok().kind == TokenKind::Operator) {
      std::string_view t = text();
      if (t == "++" || t == "--" || t == "+" || t == "-" || t == "!" || t == "~") {
        auto u = node(NodeKind::PrefixUnary);
        u->span.begin = here();
        u->text = std::string(t);
        bump();
        u->add(unary());
        finish(*u);
        return u;
      }
    }
    if (cast_ahead()) {
      auto c = node(NodeKind::Cast);
      c->span.begin = here();
      bump();
      std::size_t from = offset_here();
      parse_type();
      while (is_sym("&")) {
        bump();
        parse_type();
      }
      c->text = source_since(from);
      expect(")");
      c->add(lambda_ahead() ? lambda() : unary());
      finish(*c);
      return c;
    }
    auto e = postfix();
    return e;
  }

  Ptr postfix() {
    auto e = primary();
    e = selectors(std::move(e));
    while (is_sym("++") || is_sym("--")) {
      auto u = node(NodeKind::PostfixUnary);
      u->span.begin = e->span.begin;
      u->text = std::string(text());
      u->add(std::move(e));
      bump();
      finish(*u);
      e = std::move(u);
    }
    return e;
  }

  void arguments(PNode& call) {
    expect("(");
    while (!is_sym(")")) {
      call.add(expression());
      if (!is_sym(",")) break;
      bump();
      if (is_sym(")")) fail("expected expression");
    }
    expect(")");
  }

  Ptr leaf(NodeKind kind) {
    auto n = node(kind);
    n->span.begin = here();
    n->text = tok().text;
    bump();
    finish(*n);
    return n;
  }

  // Array type in expression position: `int[].class`, `String[]::new`.
  Ptr type_expression(Position begin) {
    std::size_t from = offset_here();
    if (!scan_type()) fail("expected type");
    std::string type = source_since(from);
    if (is_sym("::")) return method_ref_rest(begin, nullptr, std::move(type));
    expect(".");
    expect("class");
    auto c = node(NodeKind::ClassLiteral);
    c->span.begin = begin;
    c->text = std::move(type);
    finish(*c);
    return c;
  }

  Ptr method_ref_rest(Position begin, Ptr target, std::string type) {
    auto r = node(NodeKind::MethodRef);
    r->span.begin = begin;
    if (target) r->add(std::move(target));
    expect("::");
    if (is_sym("<")) {
      if (!scan_type_args()) fail("malformed type arguments");
    }
    if (is_kw("new")) {
      bump();
      r->text = type.empty() ? "new" : type + "::new";
    } else {
      std::string name = expect_ident();
      r->text = type.empty() ? name : type + "::" + name;
    }
    finish(*r);
    return r;
  }

  Ptr primary() {
    Position begin = here();
    switch (tok().kind) {
      case TokenKind::NumericLiteral: return leaf(NodeKind::NumericLiteral);
      case TokenKind::StringLiteral: return leaf(NodeKind::StringLiteral);
      case TokenKind::CharLiteral: return leaf(NodeKind::CharLiteral);
      case TokenKind::BoolOrNullLiteral:
        return leaf(tok().text == "null" ? NodeKind::NullLiteral : NodeKind::BoolLiteral);
      case TokenKind::Identifier: {
        if (is_sym("(", 1)) {
          auto call = node(NodeKind::MethodCall);
          call->span.begin = begin;
          call->text = expect_ident();
          arguments(*call);
          finish(*call);
          return call;
        }
        if (is_sym("[", 1) && is_sym("]", 2)) return type_expression(begin);
        if (is_sym("<", 1) && generic_method_ref_ahead()) {
          std::size_t from = offset_here();
          scan_type();
          return method_ref_rest(begin, nullptr, source_since(from));
        }
        return leaf(NodeKind::Name);
      }
      case TokenKind::Keyword: {
        const std::string& kw = tok().text;
        if (kw == "this" || kw == "super") {
          if (is_sym("(", 1)) {  // explicit constructor invocation
            auto call = node(NodeKind::MethodCall);
            call->span.begin = begin;
            call->text = kw;
            bump();
            arguments(*call);
            finish(*call);
            return call;
          }
          return leaf(kw == "this" ? NodeKind::This : NodeKind::Super);
        }
        if (kw == "new") return creator(begin, nullptr);
        if (is_primitive(kw) || kw == "void") {
          if (kw == "void") {
            bump();
            expect(".");
            expect("class");
            auto c = node(NodeKind::ClassLiteral);
            c->span.begin = begin;
            c->text = "void";
            finish(*c);
            return c;
          }
          return type_expression(begin);
        }
        break;
      }
      case TokenKind::Separator:
      case TokenKind::Operator:
        if (is_sym("(")) {
          auto p = node(NodeKind::Parenthesized);
          p->span.begin = begin;
          bump();
          p->add(expression());
          expect(")");
          finish(*p);
          return p;
        }
        break;
      default:
        break;
    }
    fail("expected expression");
  }

  Ptr selectors(Ptr e) {
    while (true) {
      Position begin = e->span.begin;
      if (is_sym(".")) {
        bump();
        if (is_sym("<")) {
          if (!scan_type_args()) fail("malformed type arguments");
          auto call = node(NodeKind::MethodCall);
          call->span.begin = begin;
          call->add(std::move(e));
          call->text = expect_ident();
          arguments(*call);
          finish(*call);
          e = std::move(call);
        } else if (is_ident() && is_sym("(", 1)) {
          auto call = node(NodeKind::MethodCall);
          call->span.begin = begin;
          call->add(std::move(e));
          call->text = expect_ident();
          arguments(*call);
          finish(*call);
          e = std::move(call);
        } else if (is_kw("new")) {
          e = creator(begin, std::move(e));
        } else if (is_kw("class")) {
          bump();
          auto c = node(NodeKind::ClassLiteral);
          c->span.begin = begin;
          c->add(std::move(e));
          finish(*c);
          e = std::move(c);
        } else if (is_kw("this") || is_kw("super")) {
          auto f = node(NodeKind::FieldAccess);
          f->span.begin = begin;
          f->text = tok().text;
          bump();
          f->add(std::move(e));
          if (is_sym("(") && f->text == "super") {  // Outer.super(...)
            auto call = node(NodeKind::MethodCall);
            call->span.begin = begin;
            call->text = "super";
            call->add(std::move(f));
            arguments(*call);
            finish(*call);
            e = std::move(call);
            continue;
          }
          finish(*f);
          e = std::move(f);
        } else {
          auto f = node(NodeKind::FieldAccess);
          f->span.begin = begin;
          f->add(std::move(e));
          f->text = expect_ident();
          finish(*f);
          e = std::move(f);
        }
      } else if (is_sym("[")) {
        if (is_sym("]", 1)) {
          // `a.b.C[].class`
          bump();
          bump();
          scan_dims();
          if (is_sym("::")) {
            e = method_ref_rest(begin, std::move(e), "");
            continue;
          }
          expect(".");
          expect("class");
          auto c = node(NodeKind::ClassLiteral);
          c->span.begin = begin;
          c->add(std::move(e));
          finish(*c);
          e = std::move(c);
          continue;
        }
        bump();
        auto a = node(NodeKind::ArrayAccess);
        a->span.begin = begin;
        a->add(std::move(e));
        a->add(expression());
        expect("]");
        finish(*a);
        e = std::move(a);
      } else if (is_sym("::")) {
        e = method_ref_rest(begin, std::move(e), "");
      } else {
        return e;
      }
    }
  }

  Ptr creator(Position begin, Ptr outer) {
    expect("new");
    if (is_sym("<") && !scan_type_args()) fail("malformed type arguments");
    std::size_t from = offset_here();
    if (!scan_class_type_no_dims()) fail("expected type");
    std::string type = source_since(from);

    if (is_sym("[")) {
      auto arr = node(NodeKind::NewArray);
      arr->span.begin = begin;
      arr->text = type;
      if (outer) arr->add(std::move(outer));
      bool sized = false;
      while (is_sym("[")) {
        bump();
        if (is_sym("]")) {
          bump();
          continue;
        }
        if (sized && arr->kids.empty()) fail("expected ']'");
        sized = true;
        arr->add(expression());
        expect("]");
      }
      if (is_sym("{")) arr->add(array_init());
      finish(*arr);
      return arr;
    }

    auto obj = node(NodeKind::NewObject);
    obj->span.begin = begin;
    obj->text = type;
    if (outer) obj->add(std::move(outer));
    arguments(*obj);
    if (is_sym("{")) {
      auto body = node(NodeKind::ClassDecl);
      body->span.begin = here();
      class_body(*body, false);
      finish(*body);
      obj->add(std::move(body));
    }
    finish(*obj);
    return obj;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int gt_ = 0;
  Position last_end_{1, 1};
  std::size_t last_end_offset_ = 0;
};

void flatten(Ptr& p, NodeId parent, std::vector<SyntaxNode>& out) {
  const auto id = static_cast<NodeId>(out.size());
  out.emplace_back();
  {
    SyntaxNode& n = out.back();
    n.kind = p->kind;
    n.span = p->span;
    n.parent = parent;
    n.op = p->op;
    n.has_braces = p->has_braces;
    n.text = std::move(p->text);
    n.modifiers = p->modifiers;
  }
  for (auto& kid : p->kids) {
    const auto child_id = static_cast<NodeId>(out.size());
    out[id].children.push_back(child_id);
    flatten(kid, id, out);
  }
}

std::size_t count_chars(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<SourceLine> split_lines(std::string_view source, const std::vector<Token>& tokens) {
  std::vector<SourceLine> lines;
  std::vector<std::size_t> starts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= source.size(); ++i) {
    bool end = i == source.size();
    bool nl = !end && (source[i] == '\n' || source[i] == '\r');
    if (end || nl) {
      if (end && start == source.size() && !lines.empty()) break;
      SourceLine line;
      line.text = std::string(source.substr(start, i - start));
      line.byte_length = line.text.size();
      lines.push_back(std::move(line));
      starts.push_back(start);
      if (nl && source[i] == '\r' && i + 1 < source.size() && source[i + 1] == '\n') ++i;
      start = i + 1;
    }
  }
  for (const Token& t : tokens) {
    if (t.line == 0 || t.line > lines.size()) continue;
    SourceLine& line = lines[t.line - 1];
    std::size_t end_byte = t.end_column - 1;
    std::size_t chars = count_chars(std::string_view(line.text).substr(0, end_byte));
    if (chars > line.code_length) line.code_length = chars;
  }
  return lines;
}

}  // namespace

SyntaxUnit parse(std::string_view source, std::string path) {
  std::vector<Token> tokens = lex(source);
  Parser parser(source, tokens);
  Ptr root = parser.compilation_unit();
  std::vector<SyntaxNode> nodes;
  flatten(root, kNoNode, nodes);
  auto lines = split_lines(source, tokens);
  return SyntaxUnit(std::move(path), std::move(nodes), std::move(tokens), std::move(lines));
}

}  // namespace dlens
