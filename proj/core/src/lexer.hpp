#pragma once

// Tokenizer for the line-oriented program and goal syntax.

#include "sqclp/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sqclp::lex {

enum class Tok : unsigned char {
  Ident,    // c, king_liar, p'
  Var,      // X, _G1, Y'
  Prim,     // op_+, cp_>=
  Number,   // 0.75, 3, 1/3 (unsigned)
  LParen, RParen, LBrack, RBrack, Comma, Bar, Dot, Hash, Question, Tilde, Equals,
  EqEq,     // ==
  Geq,      // >= or ⊒
  Arrow,    // <- or ←
  Minus, Slash, Colon,
  End,
};

struct Token {
  Tok kind;
  std::string text;  // normalized spelling (ASCII primes, canonical primitive aliases kept verbatim)
  Rational number;   // Number tokens only
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(Tok kind);

// Throws ParseError (see program.hpp) on unknown characters. `line` numbers the produced tokens.
std::vector<Token> tokenize(std::string_view text, std::size_t line = 1);

}  // namespace sqclp::lex
