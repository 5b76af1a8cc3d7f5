#include <gtest/gtest.h>

#include "dlens/cognitive.hpp"
#include "support.hpp"

using namespace dlens;

namespace {

int cc(const std::string& source) { return cognitive_complexity(parse(source)).file_total; }
int cc_body(const std::string& body) { return cc(in_method(body)); }

}  // namespace

TEST(Cognitive, DigitOrLetter) {
  auto r = cognitive_complexity(parse(fixture("contains_digit_or_letter.java")));
  EXPECT_EQ(r.file_total, 5);
  ASSERT_EQ(r.methods.size(), 1u);
  EXPECT_EQ(r.methods[0].name, "containsDigitOrLetter");
  std::vector<std::pair<std::string, int>> got;
  for (const auto& inc : r.methods[0].increments) got.emplace_back(inc.reason, inc.amount);
  EXPECT_EQ(got, (std::vector<std::pair<std::string, int>>{
                     {"foreach", 1}, {"if", 2}, {"logical", 1}, {"logical", 1}}));
}

TEST(Cognitive, KickCommandPair) {
  EXPECT_EQ(cc(fixture("kick_original.java")), 5);
  EXPECT_EQ(cc(fixture("kick_decompiled.java")), 8);
}

TEST(Cognitive, PairFixtures) {
  EXPECT_EQ(cc(fixture("effect_original.java")), 4);
  EXPECT_EQ(cc(fixture("effect_decompiled.java")), 9);
  EXPECT_EQ(cc(fixture("fifo_original.java")), 5);
  EXPECT_EQ(cc(fixture("fifo_decompiled.java")), 6);
  EXPECT_EQ(cc(fixture("charseq_original.java")), 4);
  EXPECT_EQ(cc(fixture("charseq_decompiled.java")), 4);
  EXPECT_EQ(cc(fixture("soundex_original.java")), 5);
  EXPECT_EQ(cc(fixture("soundex_decompiled.java")), 3);
  EXPECT_EQ(cc(fixture("else_if_chain.java")), 4);
  EXPECT_EQ(cc(fixture("nested_else.java")), 8);
}

TEST(Cognitive, StraightLineIsZero) {
  EXPECT_EQ(cc_body("int x = a + b; foo(x); x = bar(x) * 2; return x;"), 0);
  EXPECT_EQ(cc("class A {}"), 0);
}

TEST(Cognitive, Structures) {
  EXPECT_EQ(cc_body("if (a) { }"), 1);
  EXPECT_EQ(cc_body("if (a) { } else { }"), 2);
  EXPECT_EQ(cc_body("if (a) { } else if (b) { } else { }"), 3);
  EXPECT_EQ(cc_body("int x = a > b ? a : b;"), 1);
  EXPECT_EQ(cc_body("switch (a) { case 1: break; case 2: break; default: }"), 1);
  EXPECT_EQ(cc_body("for (;;) { }"), 1);
  EXPECT_EQ(cc_body("for (int i : xs) { }"), 1);
  EXPECT_EQ(cc_body("while (a > 0) { }"), 1);
  EXPECT_EQ(cc_body("do { } while (a > 0);"), 1);
  EXPECT_EQ(cc_body("try { } catch (Exception e) { } finally { }"), 1);
  EXPECT_EQ(cc_body("try { } catch (RuntimeException e) { } catch (Exception e) { }"), 2);
}

TEST(Cognitive, NestingIncrements) {
  EXPECT_EQ(cc_body("while (a > 0) { if (b > 0) { for (;;) { } } }"), 1 + 2 + 3);
  EXPECT_EQ(cc_body("if (a > 0) { int x = b > 0 ? 1 : 2; }"), 1 + 2);
  EXPECT_EQ(cc_body("try { if (a > 0) { } } catch (Exception e) { if (b > 0) { } }"), 1 + 1 + 2);
  EXPECT_EQ(cc_body("Runnable r = () -> { if (a > 0) { } };"), 2);
  // else and else-if take no nesting increment
  EXPECT_EQ(cc_body("while (x()) { if (a > 0) { } else if (b > 0) { } else { } }"), 1 + 2 + 1 + 1);
}

TEST(Cognitive, LogicalSequences) {
  EXPECT_EQ(cc_body("boolean z = a > 0 && b > 0 && c > 0;"), 1);
  EXPECT_EQ(cc_body("boolean z = a > 0 && b > 0 || c > 0;"), 2);
  EXPECT_EQ(cc_body("boolean z = a > 0 && (b > 0 || c > 0) && d > 0;"), 3);
  EXPECT_EQ(cc_body("boolean z = a > 0 || b > 0 && c > 0 || d > 0;"), 3);
  // negation starts a separate sequence
  EXPECT_EQ(cc_body("boolean z = a > 0 && !(b > 0 && c > 0);"), 2);
  EXPECT_EQ(cc_body("boolean z = (a & b) > 0 | c > 0;"), 0);
}

TEST(Cognitive, LabeledJumps) {
  EXPECT_EQ(cc_body("outer: while (x()) { break outer; }"), 2);
  EXPECT_EQ(cc_body("while (x()) { break; }"), 1);
  EXPECT_EQ(cc_body("outer: for (;;) { continue outer; }"), 2);
}

TEST(Cognitive, FileTotalSumsMethods) {
  auto r = cognitive_complexity(parse(
      "class A {\n"
      "  A() { if (a) { } }\n"
      "  static { while (b) { } }\n"
      "  void f() { for (;;) { if (c) { } } }\n"
      "  void g() { }\n"
      "  Runnable r = () -> { if (d) { } };\n"
      "  class B { void h() { if (e) { } } }\n"
      "}\n"));
  int sum = 0;
  for (const auto& m : r.methods) {
    int inc_sum = 0;
    for (const auto& i : m.increments) {
      EXPECT_GE(i.amount, 1);
      inc_sum += i.amount;
    }
    EXPECT_EQ(m.total, inc_sum);
    sum += m.total;
  }
  EXPECT_EQ(r.file_total, sum);
  EXPECT_EQ(r.file_total, 1 + 1 + 3 + 0 + 2 + 1);
  EXPECT_EQ(r.methods.size(), 6u);
}

TEST(Cognitive, FlatExtensionAddsOne) {
  std::string body = "while (a > 0) { if (b > 0) { } }";
  EXPECT_EQ(cc_body(body + " if (c > 0) { }"), cc_body(body) + 1);
}

TEST(Cognitive, WrappingNeverDecreases) {
  std::string body = "if (a > 0) { x(); } for (;;) { if (b > 0 && c > 0) { } }";
  EXPECT_GE(cc_body("while (d > 0) { " + body + " }"), cc_body(body));
  EXPECT_GE(cc_body("try { " + body + " } finally { }"), cc_body(body));
}

TEST(Cognitive, CommentsDoNotMatter) {
  EXPECT_EQ(cc(fixture("contains_digit_or_letter.java")),
            cc("// header\n" + fixture("contains_digit_or_letter.java") + "/* if (x) { } */\n"));
}
