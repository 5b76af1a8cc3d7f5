#include "dlens/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace dlens {

SourceError::SourceError(const std::string& what, std::uint32_t line, std::uint32_t column)
    : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
      line_(line),
      column_(column) {}

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Operator: return "operator";
    case TokenKind::Separator: return "separator";
    case TokenKind::NumericLiteral: return "numeric-literal";
    case TokenKind::StringLiteral: return "string-literal";
    case TokenKind::CharLiteral: return "char-literal";
    case TokenKind::BoolOrNullLiteral: return "bool-or-null-literal";
    case TokenKind::EndOfFile: return "end-of-file";
  }
  return "?";
}

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",
    "catch",    "char",       "class",     "const",     "continue",  "default",
    "do",       "double",     "else",      "enum",      "extends",   "final",
    "finally",  "float",      "for",       "goto",      "if",        "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",
    "new",      "package",    "private",   "protected", "public",    "return",
    "short",    "static",     "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",
    "volatile", "while",
};

// Longest first so that maximal munch falls out of a linear scan.
constexpr std::array<std::string_view, 37> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==",
    "!=",   "<=",  ">=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=",
    "%=",   "<<",  ">>",  "=",   ">",  "<",  "!",  "~",  "?",  ":",
    "+",    "-",   "*",   "/",   "&",  "|",  "^",
};

constexpr std::array<std::string_view, 12> kSeparators = {
    "...", "::", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@",
};

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    } else if (src_[pos_] == '\r') {
      if (peek(1) != '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
    }
    ++pos_;
  }

  std::uint32_t column() const { return static_cast<std::uint32_t>(pos_ - line_start_ + 1); }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\f' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n' && peek() != '\r') advance();
      } else if (c == '/' && peek(1) == '*') {
        std::uint32_t line = line_, col = column();
        advance();
        advance();
        while (true) {
          if (pos_ >= src_.size()) throw LexError("unterminated comment", line, col);
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, std::uint32_t line, std::uint32_t col) {
    Token t;
    t.kind = kind;
    t.text = std::string(src_.substr(start, pos_ - start));
    t.line = line;
    t.column = col;
    t.end_column = col + static_cast<std::uint32_t>(pos_ - start);
    t.offset = static_cast<std::uint32_t>(start);
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    const std::uint32_t line = line_;
    const std::uint32_t col = column();
    const auto c = static_cast<unsigned char>(peek());

    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(peek()))) advance();
      std::string_view word = src_.substr(start, pos_ - start);
      TokenKind kind = TokenKind::Identifier;
      if (word == "true" || word == "false" || word == "null") {
        kind = TokenKind::BoolOrNullLiteral;
      } else if (is_keyword(word)) {
        kind = TokenKind::Keyword;
      }
      return make(kind, start, line, col);
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      return make(TokenKind::NumericLiteral, start, line, col);
    }
    if (c == '"' || c == '\'') {
      lex_quoted(static_cast<char>(c), line, col);
      return make(c == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, start, line, col);
    }
    for (auto sep : kSeparators) {
      if (src_.substr(pos_, sep.size()) == sep) {
        for (std::size_t i = 0; i < sep.size(); ++i) advance();
        return make(TokenKind::Separator, start, line, col);
      }
    }
    for (auto op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return make(TokenKind::Operator, start, line, col);
      }
    }
    throw LexError(std::string("stray character '") + static_cast<char>(c) + "'", line, col);
  }

  void digits(bool (*accept)(unsigned char)) {
    while (pos_ < src_.size() && (accept(static_cast<unsigned char>(peek())) || peek() == '_'))
      advance();
  }

  void lex_number() {
    auto dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    auto hex = [](unsigned char ch) { return std::isxdigit(ch) != 0; };
    auto bin = [](unsigned char ch) { return ch == '0' || ch == '1'; };

    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      digits(hex);
      bool is_float = false;
      if (peek() == '.') {
        is_float = true;
        advance();
        digits(hex);
      }
      if (peek() == 'p' || peek() == 'P') {
        is_float = true;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        digits(dec);
      }
      char s = peek();
      if (is_float ? (s == 'f' || s == 'F' || s == 'd' || s == 'D') : (s == 'l' || s == 'L'))
        advance();
      return;
    }
    if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      digits(bin);
      if (peek() == 'l' || peek() == 'L') advance();
      return;
    }
    digits(dec);
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      advance();
      digits(dec);
    } else if (peek() == '.' && !is_ident_start(static_cast<unsigned char>(peek(1))) &&
               peek(1) != '.') {
      // `1.` and `1.e5` are floats; `1..` and `1.foo` are not.
      advance();
    } else if (peek() == '.' && (peek(1) == 'e' || peek(1) == 'E' || peek(1) == 'f' ||
                                 peek(1) == 'F' || peek(1) == 'd' || peek(1) == 'D')) {
      advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      advance();
      if (peek() == '+' || peek() == '-') advance();
      digits(dec);
    }
    char s = peek();
    if (s == 'l' || s == 'L' || s == 'f' || s == 'F' || s == 'd' || s == 'D') advance();
  }

  void lex_quoted(char quote, std::uint32_t line, std::uint32_t col) {
    advance();
    while (true) {
      if (pos_ >= src_.size() || peek() == '\n' || peek() == '\r') {
        throw LexError(quote == '"' ? "unterminated string literal" : "unterminated char literal",
                       line, col);
      }
      char ch = peek();
      if (ch == '\\') {
        advance();
        if (pos_ < src_.size() && peek() != '\n' && peek() != '\r') advance();
        continue;
      }
      advance();
      if (ch == quote) break;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  std::uint32_t line_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view source) { return Lexer(source).run(); }

}  // namespace dlens
