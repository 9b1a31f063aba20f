#include "oruga/dsl.hpp"

#include <array>

namespace oruga {

namespace {

constexpr std::array<std::string_view, 10> kKeywords = {
    "typeSystem", "types",  "order",  "conSpec",    "construction",
    "tSchema",    "source", "target", "antecedent", "consequent",
};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '\'';
}

} // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Lexeme> tokenize(std::string_view text, const std::string& file) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  auto span_of = [&](std::size_t start, std::size_t len) {
    SourceSpan s;
    s.file = file;
    s.line = line;
    s.column_start = col;
    s.column_end = col + static_cast<int>(len) - 1;
    s.offset_start = start;
    s.offset_end = start + len;
    return s;
  };
  auto emit = [&](LexemeKind kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), span_of(i, len)});
    i += len;
    col += static_cast<int>(len);
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (ident_char(c)) {
      std::size_t len = 1;
      while (i + len < text.size() && ident_char(text[i + len])) ++len;
      auto word = text.substr(i, len);
      LexemeKind kind = word == "_"          ? LexemeKind::Underscore
                        : is_keyword(word) ? LexemeKind::Keyword
                                           : LexemeKind::Ident;
      emit(kind, len);
      continue;
    }
    char next = i + 1 < text.size() ? text[i + 1] : '\0';
    switch (c) {
    case '=': emit(LexemeKind::Equals, 1); continue;
    case ',': emit(LexemeKind::Comma, 1); continue;
    case '[': emit(LexemeKind::LBracket, 1); continue;
    case ']': emit(LexemeKind::RBracket, 1); continue;
    case '(': emit(LexemeKind::LParen, 1); continue;
    case ')': emit(LexemeKind::RParen, 1); continue;
    case ':':
      if (next == ':') emit(LexemeKind::DoubleColon, 2);
      else emit(LexemeKind::Colon, 1);
      continue;
    case '<':
      if (next == '-') emit(LexemeKind::LeftArrow, 2);
      else emit(LexemeKind::Less, 1);
      continue;
    case '-':
      if (next == '>') {
        emit(LexemeKind::RightArrow, 2);
        continue;
      }
      break;
    default: break;
    }
    std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                            ? "byte " + std::to_string(static_cast<unsigned char>(c))
                            : std::string("'") + c + "'";
    throw Error(ErrorKind::UnexpectedCharacter, "unexpected " + shown, span_of(i, 1));
  }
  return out;
}

} // namespace oruga
