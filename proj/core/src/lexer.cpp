#include "lexer.hpp"

#include "sqclp/program.hpp"

#include <array>
#include <cctype>

namespace sqclp::lex {

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Var: return "variable";
    case Tok::Prim: return "primitive";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Bar: return "'|'";
    case Tok::Dot: return "'.'";
    case Tok::Hash: return "'#'";
    case Tok::Question: return "'?'";
    case Tok::Tilde: return "'~'";
    case Tok::Equals: return "'='";
    case Tok::EqEq: return "'=='";
    case Tok::Geq: return "'>='";
    case Tok::Arrow: return "'<-'";
    case Tok::Minus: return "'-'";
    case Tok::Slash: return "'/'";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of line";
  }
  return "token";
}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Multi-byte spellings accepted in place of ASCII ones.
struct Alias {
  std::string_view utf8;
  std::string_view ascii;
};
constexpr std::array<Alias, 9> kAliases = {{
    {"′", "'"}, {"″", "''"}, {"×", "*"}, {"−", "-"}, {"≤", "<="}, {"≥", ">="}, {"⊒", ">="}, {"←", "<-"}, {"∞", "inf"},
}};

}  // namespace

std::vector<Token> tokenize(std::string_view raw, std::size_t line) {
  // Normalize unicode spellings first; columns refer to the normalized text.
  std::string text;
  for (std::size_t i = 0; i < raw.size();) {
    bool matched = false;
    for (const Alias& a : kAliases) {
      if (raw.substr(i, a.utf8.size()) == a.utf8) {
        text += a.ascii;
        i += a.utf8.size();
        matched = true;
        break;
      }
    }
    if (!matched) text += raw[i++];
  }

  std::vector<Token> out;
  std::size_t col_base = 0;  // offset of the current line start
  std::size_t i = 0;
  auto push = [&](Tok kind, std::string s, std::size_t start) {
    out.push_back({kind, std::move(s), Rational(0), line, start - col_base + 1});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col_base = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::islower(static_cast<unsigned char>(c))) {
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string word = text.substr(start, i - start);
      if ((word == "op_" || word == "cp_") && i < text.size()) {
        std::size_t j = i;
        while (j < text.size() && std::string_view("+-*<>=").find(text[j]) != std::string_view::npos) ++j;
        if (j > i) {
          push(Tok::Prim, word + text.substr(i, j - i), start);
          i = j;
          continue;
        }
      }
      push(Tok::Ident, std::move(word), start);
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && ident_char(text[i])) ++i;
      push(Tok::Var, text.substr(start, i - start), start);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i + 1 < text.size() && text[i] == '.' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      } else if (i + 1 < text.size() && text[i] == '/' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      std::string s = text.substr(start, i - start);
      Token t{Tok::Number, s, parse_rational(s), line, start - col_base + 1};
      out.push_back(std::move(t));
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "<-") { push(Tok::Arrow, two, start); i += 2; continue; }
    if (two == "==") { push(Tok::EqEq, two, start); i += 2; continue; }
    if (two == ">=") { push(Tok::Geq, two, start); i += 2; continue; }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBrack; break;
      case ']': kind = Tok::RBrack; break;
      case ',': kind = Tok::Comma; break;
      case '|': kind = Tok::Bar; break;
      case '.': kind = Tok::Dot; break;
      case '#': kind = Tok::Hash; break;
      case '?': kind = Tok::Question; break;
      case '~': kind = Tok::Tilde; break;
      case '=': kind = Tok::Equals; break;
      case '-': kind = Tok::Minus; break;
      case '/': kind = Tok::Slash; break;
      case ':': kind = Tok::Colon; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line, start - col_base + 1);
    }
    push(kind, std::string(1, c), start);
    ++i;
  }
  out.push_back({Tok::End, "", Rational(0), line, i - col_base + 1});
  return out;
}

}  // namespace sqclp::lex
