#include <gtest/gtest.h>

#include <functional>

#include "dlens/syntax.hpp"
#include "support.hpp"

using namespace dlens;

namespace {

std::vector<NodeId> of_kind(const SyntaxUnit& u, NodeKind k) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < u.size(); ++i) {
    if (u.node(i).kind == k) out.push_back(i);
  }
  return out;
}

std::string shape(const SyntaxUnit& u, NodeId id) {
  const auto& n = u.node(id);
  std::string s(to_string(n.kind));
  if (n.op) s += "[" + std::string(to_string(*n.op)) + "]";
  if (!n.children.empty()) {
    s += "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) s += " ";
      s += shape(u, n.children[i]);
    }
    s += ")";
  }
  return s;
}

std::string expr_shape(const std::string& expr) {
  auto u = parse("class T { Object x = " + expr + "; }");
  auto decl = of_kind(u, NodeKind::VarDeclarator).at(0);
  return shape(u, u.node(decl).children.at(0));
}

}  // namespace

TEST(Parser, DigitOrLetterMethod) {
  auto u = parse(fixture("contains_digit_or_letter.java"));
  EXPECT_EQ(u.methods().size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::ForEach).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::If).size(), 1u);
  std::set<OpKind> logical;
  for (auto id : of_kind(u, NodeKind::Binary)) {
    auto op = *u.node(id).op;
    if (op_class(op) == OpClass::Logical) logical.insert(op);
  }
  EXPECT_EQ(logical, (std::set<OpKind>{OpKind::LogAnd, OpKind::LogOr}));
}

TEST(Parser, EmptyClass) {
  auto u = parse("class A {}");
  EXPECT_TRUE(u.methods().empty());
  EXPECT_EQ(u.node(u.root()).kind, NodeKind::CompilationUnit);
}

TEST(Parser, UnbalancedBraceReportsLine) {
  try {
    parse("class A {\n  void f() {\n    x();\n  }\n  }\n}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
  EXPECT_THROW(parse("class A {\n  void f() {\n"), ParseError);
}

TEST(Parser, RejectsMalformed) {
  EXPECT_THROW(parse("class A { void f() { if (x) } }"), ParseError);
  EXPECT_THROW(parse("class A { void f() { x = ; } }"), ParseError);
  EXPECT_THROW(parse("class A { void f() { else {} } }"), ParseError);
  EXPECT_THROW(parse("int x;"), ParseError);
}

TEST(Parser, Precedence) {
  EXPECT_EQ(expr_shape("a + b * c"), "binary[+](name binary[*](name name))");
  EXPECT_EQ(expr_shape("a & b >> c - d"), "binary[&](name binary[>>](name binary[-](name name)))");
  EXPECT_EQ(expr_shape("a || b && c"), "binary[||](name binary[&&](name name))");
  EXPECT_EQ(expr_shape("a - b - c"), "binary[-](binary[-](name name) name)");
  EXPECT_EQ(expr_shape("a ? b : c ? d : e"),
            "ternary[?:](name name ternary[?:](name name name))");
  EXPECT_EQ(expr_shape("x instanceof List && y"),
            "binary[&&](instanceof[instanceof](name) name)");
}

TEST(Parser, AssignmentIsRightAssociative) {
  auto u = parse(in_method("a = b += c;"));
  auto assigns = of_kind(u, NodeKind::Assign);
  ASSERT_EQ(assigns.size(), 2u);
  EXPECT_EQ(u.node(assigns[0]).op, OpKind::Assign);
  EXPECT_EQ(u.node(assigns[1]).op, OpKind::AddAssign);
  EXPECT_EQ(u.node(assigns[1]).parent, assigns[0]);
}

TEST(Parser, CastsAndParentheses) {
  EXPECT_EQ(expr_shape("(int) x + 1"), "binary[+](cast(name) number)");
  EXPECT_EQ(expr_shape("(a) + b"), "binary[+](parenthesized(name) name)");
  EXPECT_EQ(expr_shape("(List<String>) o"), "cast(name)");
  EXPECT_EQ(expr_shape("(String) (Object) s"), "cast(cast(name))");
  EXPECT_EQ(expr_shape("(a < b)"), "parenthesized(binary[<](name name))");
}

TEST(Parser, GenericsAndShifts) {
  auto u = parse(
      "class T { Map<String, List<Integer>> m = new HashMap<>();\n"
      "  List<List<List<String>>> deep;\n"
      "  int s = a >> 2 >>> 1; }");
  auto bins = of_kind(u, NodeKind::Binary);
  ASSERT_EQ(bins.size(), 2u);
  EXPECT_EQ(u.node(bins[0]).op, OpKind::UShr);
  EXPECT_EQ(u.node(bins[1]).op, OpKind::Shr);
  EXPECT_EQ(of_kind(u, NodeKind::FieldDecl).size(), 3u);
}

TEST(Parser, LambdasAndMethodRefs) {
  auto u = parse(in_method(
      "Runnable r = () -> run();\n"
      "Function<Integer, Integer> f = x -> x + 1;\n"
      "BinaryOperator<Integer> g = (Integer x, Integer y) -> { return x * y; };\n"
      "list.forEach(System.out::println);\n"
      "Supplier<List<String>> s = ArrayList::new;\n"
      "Function<Integer, int[]> mk = int[]::new;\n"));
  EXPECT_EQ(of_kind(u, NodeKind::Lambda).size(), 3u);
  EXPECT_EQ(of_kind(u, NodeKind::MethodRef).size(), 3u);
}

TEST(Parser, Statements) {
  auto u = parse(in_method(
      "outer:\n"
      "for (int i = 0, j = 1; i < n; i++, j--) {\n"
      "  for (String s : list) continue outer;\n"
      "}\n"
      "do x(); while (y);\n"
      "switch (k) { case 1: case 2: a(); break; default: b(); }\n"
      "try (Reader r = open()) { r.read(); } catch (IOException | RuntimeException e) { } finally { }\n"
      "synchronized (this) { a(); }\n"
      "assert a > 0 : \"neg\";\n"
      "throw new IllegalStateException();\n"));
  EXPECT_EQ(of_kind(u, NodeKind::Labeled).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::For).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::ForEach).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::DoWhile).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::SwitchCase).size(), 2u);
  EXPECT_EQ(of_kind(u, NodeKind::Catch).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::Finally).size(), 1u);
  auto cont = of_kind(u, NodeKind::Continue);
  ASSERT_EQ(cont.size(), 1u);
  EXPECT_EQ(u.node(cont[0]).text, "outer");
}

TEST(Parser, HasBracesOnlyOnBodies) {
  auto u = parse(in_method(
      "if (a) x(); else if (b) { y(); } else z();\n"
      "while (a) { }\n"
      "for (;;) x();\n"
      "do { } while (a);\n"));
  for (NodeId i = 0; i < u.size(); ++i) {
    const auto& n = u.node(i);
    bool body_owner = n.kind == NodeKind::If || n.kind == NodeKind::For ||
                      n.kind == NodeKind::ForEach || n.kind == NodeKind::While ||
                      n.kind == NodeKind::DoWhile ||
                      (n.kind == NodeKind::Else && !is_else_if(u, n.children[0]));
    EXPECT_EQ(n.has_braces.has_value(), body_owner) << to_string(n.kind);
  }
  auto ifs = of_kind(u, NodeKind::If);
  ASSERT_EQ(ifs.size(), 2u);
  EXPECT_FALSE(*u.node(ifs[0]).has_braces);
  EXPECT_TRUE(*u.node(ifs[1]).has_braces);
  EXPECT_TRUE(is_else_if(u, ifs[1]));
}

TEST(Parser, OperatorSetExactlyOnOperatorNodes) {
  auto u = parse(fixture("fifo_decompiled.java"));
  for (const auto& n : u.nodes()) {
    bool op_node = n.kind == NodeKind::Binary || n.kind == NodeKind::Assign ||
                   n.kind == NodeKind::Conditional || n.kind == NodeKind::InstanceOf;
    EXPECT_EQ(n.op.has_value(), op_node);
  }
}

TEST(Parser, SpansNestInsideParents) {
  for (auto name : {"effect_decompiled.java", "fifo_decompiled.java", "soundex_decompiled.java",
                    "kick_decompiled.java", "bitstream_decompiled.java"}) {
    auto u = parse(fixture(name));
    for (NodeId i = 1; i < u.size(); ++i) {
      const auto& n = u.node(i);
      EXPECT_TRUE(u.node(n.parent).span.contains(n.span)) << name << " " << to_string(n.kind);
      EXPECT_LE(n.span.begin, n.span.end);
    }
  }
}

TEST(Parser, Deterministic) {
  auto a = parse(fixture("effect_decompiled.java"));
  auto b = parse(fixture("effect_decompiled.java"));
  ASSERT_EQ(a.size(), b.size());
  for (NodeId i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.node(i).kind, b.node(i).kind);
    EXPECT_EQ(a.node(i).span, b.node(i).span);
    EXPECT_EQ(a.node(i).children, b.node(i).children);
  }
}

TEST(Parser, Declarations) {
  auto u = parse(
      "package a.b;\n"
      "import java.util.*;\n"
      "import static java.lang.Math.max;\n"
      "@SuppressWarnings(\"x\")\n"
      "public final class A<T extends Comparable<T>> extends B implements C, D {\n"
      "  private static final int K = 3;\n"
      "  static { init(); }\n"
      "  { inst(); }\n"
      "  public A(int x) { super(x); }\n"
      "  <R> R map(Function<? super T, ? extends R> f) throws IOException { return null; }\n"
      "  abstract void g(String... xs);\n"
      "  enum E { X(1) { void h() {} }, Y; void h() {} }\n"
      "  interface I { int C = 2; default void m() {} }\n"
      "  @interface Ann { int value() default 5; }\n"
      "  int[] arr[] = new int[3][], b2 = {1, 2};\n"
      "  Object o = new Object() { public String toString() { return \"\"; } };\n"
      "}\n");
  EXPECT_EQ(of_kind(u, NodeKind::PackageDecl).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::ImportDecl).size(), 2u);
  EXPECT_EQ(u.methods().size(), 10u);
  auto fields = of_kind(u, NodeKind::FieldDecl);
  bool found_interface_constant = false;
  for (auto f : fields) {
    if (u.node(f).text == "C") {
      found_interface_constant = true;
      EXPECT_TRUE(u.node(f).modifiers & modifier::kStatic);
      EXPECT_TRUE(u.node(f).modifiers & modifier::kFinal);
    }
  }
  EXPECT_TRUE(found_interface_constant);
}

TEST(Parser, ExpressionForms) {
  auto u = parse(in_method(
      "int[][] m = new int[][] {{1}, {2, 3}};\n"
      "String s = obj.<String>get().trim();\n"
      "Class<?> k = String[].class;\n"
      "Outer.Inner in = outer.new Inner();\n"
      "x = a[i][j]++ - -b + ~c;\n"
      "boolean z = !(a instanceof String) && (Object) s != null;\n"
      "Object o = cond ? (Runnable) () -> {} : null;\n"
      "this.x = super.y;\n"));
  EXPECT_EQ(of_kind(u, NodeKind::NewArray).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::ArrayInit).size(), 3u);
  EXPECT_EQ(of_kind(u, NodeKind::ClassLiteral).size(), 1u);
  EXPECT_EQ(of_kind(u, NodeKind::ArrayAccess).size(), 2u);
  EXPECT_EQ(of_kind(u, NodeKind::PostfixUnary).size(), 1u);
}

TEST(Parser, SourceLinesCodeLength) {
  auto u = parse("class A {\n    int x; // trailing comment\n\n  /* only comment */\n}\n");
  const auto& lines = u.source_lines();
  ASSERT_GE(lines.size(), 5u);
  EXPECT_EQ(lines[1].code_length, 10u);
  EXPECT_EQ(lines[2].code_length, 0u);
  EXPECT_EQ(lines[3].code_length, 0u);
  EXPECT_EQ(lines[1].byte_length, lines[1].text.size());
}

TEST(Nesting, IfInsideLoop) {
  auto u = parse(fixture("contains_digit_or_letter.java"));
  EXPECT_EQ(nesting_depth(u, of_kind(u, NodeKind::If).at(0)), 1);
  EXPECT_EQ(nesting_depth(u, of_kind(u, NodeKind::ForEach).at(0)), 0);
}

TEST(Nesting, TopLevelAndTripleIf) {
  auto u = parse(in_method("if (a) { if (b) { if (c) { x(); } } }"));
  auto ifs = of_kind(u, NodeKind::If);
  ASSERT_EQ(ifs.size(), 3u);
  EXPECT_EQ(nesting_depth(u, ifs[0]), 0);
  EXPECT_EQ(nesting_depth(u, ifs[1]), 1);
  EXPECT_EQ(nesting_depth(u, ifs[2]), 2);
}

TEST(Nesting, ElseIfKeepsLevel) {
  auto u = parse(in_method("if (a) { } else if (b) { if (c) { } } else { if (d) { } }"));
  auto ifs = of_kind(u, NodeKind::If);
  ASSERT_EQ(ifs.size(), 4u);
  EXPECT_EQ(nesting_depth(u, ifs[1]), 0);  // else if
  EXPECT_EQ(nesting_depth(u, ifs[2]), 1);
  EXPECT_EQ(nesting_depth(u, ifs[3]), 1);
}

TEST(Nesting, ConditionsAreNotNested) {
  auto u = parse(in_method("while (a ? b : c) { }"));
  EXPECT_EQ(nesting_depth(u, of_kind(u, NodeKind::Conditional).at(0)), 0);
}

TEST(Nesting, LambdaAndAnonymousClassAddLevels) {
  auto u = parse(in_method(
      "run(() -> { if (a) { } });\n"
      "new Thread() { public void run() { if (b) { } } };"));
  auto ifs = of_kind(u, NodeKind::If);
  ASSERT_EQ(ifs.size(), 2u);
  EXPECT_EQ(nesting_depth(u, ifs[0]), 1);
  EXPECT_EQ(nesting_depth(u, ifs[1]), 1);
}

TEST(Nesting, ChildNeverShallowerThanParent) {
  auto u = parse(fixture("effect_decompiled.java"));
  for (NodeId i = 1; i < u.size(); ++i) {
    NodeId p = u.node(i).parent;
    if (enclosing_unit(u, i) != kNoNode && enclosing_unit(u, i) == enclosing_unit(u, p)) {
      EXPECT_GE(nesting_depth(u, i), nesting_depth(u, p));
    }
  }
}
