#include <gtest/gtest.h>

#include "dlens/syntax.hpp"

using namespace dlens;

namespace {

std::vector<std::string> texts(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.text);
  return out;
}

}  // namespace

TEST(Lexer, ReturnStatement) {
  auto toks = lex("return 0;");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].kind, TokenKind::Keyword);
  EXPECT_EQ(toks[1].kind, TokenKind::NumericLiteral);
  EXPECT_EQ(toks[2].kind, TokenKind::Separator);
}

TEST(Lexer, ShiftDeclaration) {
  auto toks = lex("int x = 1 << 24;");
  EXPECT_EQ(texts(toks), (std::vector<std::string>{"int", "x", "=", "1", "<<", "24", ";"}));
  std::vector<std::string> ops;
  for (const auto& t : toks) {
    if (t.kind == TokenKind::Operator) ops.push_back(t.text);
  }
  EXPECT_EQ(ops, (std::vector<std::string>{"=", "<<"}));
}

TEST(Lexer, DropsComments) {
  auto toks = lex("// note\nx=1;");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[0].text, "x");
  EXPECT_EQ(toks[0].line, 2u);
  EXPECT_EQ(texts(lex("a /* b\n c */ d")), (std::vector<std::string>{"a", "d"}));
}

TEST(Lexer, PositionsAreOneBased) {
  auto toks = lex("a\n  bb");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[1].line, 2u);
  EXPECT_EQ(toks[1].column, 3u);
  EXPECT_EQ(toks[1].end_column, 5u);
}

TEST(Lexer, MaximalMunchOperators) {
  EXPECT_EQ(texts(lex("a>>>=b")), (std::vector<std::string>{"a", ">>>=", "b"}));
  EXPECT_EQ(texts(lex("x->y::z...")), (std::vector<std::string>{"x", "->", "y", "::", "z", "..."}));
  EXPECT_EQ(texts(lex("i++ + ++j")), (std::vector<std::string>{"i", "++", "+", "++", "j"}));
}

TEST(Lexer, NumericLiterals) {
  for (std::string lit : {"0", "42L", "0x1F", "0b1010", "1_000_000", "3.14", "1e10", "1.5e-3f",
                          ".5", "1.", "0x1.8p3", "017", "1.6777216E7", "2d"}) {
    auto toks = lex(lit);
    ASSERT_EQ(toks.size(), 1u) << lit;
    EXPECT_EQ(toks[0].kind, TokenKind::NumericLiteral) << lit;
    EXPECT_EQ(toks[0].text, lit);
  }
}

TEST(Lexer, LiteralsKeepContentVerbatim) {
  auto toks = lex(R"(s = "a \"quoted\" // not a comment"; c = '\'';)");
  ASSERT_EQ(toks.size(), 8u);
  EXPECT_EQ(toks[2].kind, TokenKind::StringLiteral);
  EXPECT_EQ(toks[2].text, R"("a \"quoted\" // not a comment")");
  EXPECT_EQ(toks[6].kind, TokenKind::CharLiteral);
}

TEST(Lexer, BoolAndNull) {
  for (auto t : lex("true false null")) EXPECT_EQ(t.kind, TokenKind::BoolOrNullLiteral);
}

TEST(Lexer, Errors) {
  EXPECT_THROW(lex("s = \"open"), LexError);
  EXPECT_THROW(lex("c = 'x"), LexError);
  EXPECT_THROW(lex("a # b"), LexError);
  EXPECT_THROW(lex("/* never closed"), LexError);
  try {
    lex("ok;\n  \"bad");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Lexer, ReconstructsCommentStrippedSource) {
  std::string src = "class A { int f() { return a+b*2; } }";
  auto toks = lex(src);
  std::string rebuilt;
  std::size_t pos = 0;
  for (const auto& t : toks) {
    rebuilt += src.substr(pos, t.offset - pos) + t.text;
    pos = t.offset + t.text.size();
  }
  EXPECT_EQ(rebuilt, src);
}
