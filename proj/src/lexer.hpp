#pragma once

#include <string>
#include <vector>

#include "ast.hpp"

namespace optri {

enum class Tok {
  Eof,
  Ident,
  Num,
  // keywords
  KwSkip, KwIf, KwThen, KwElse, KwFi, KwWhile, KwElihw, KwFor, KwTo, KwDownto,
  KwIn, KwRof, KwSelect, KwNew, KwReturn, KwRecord, KwProc, KwVars, KwVoid,
  KwInt, KwBool, KwSet, KwArray, KwTt, KwFf, KwNil, KwMin,
  // punctuation / operators
  Assign,      // :=
  Box,         // []
  Semi, Comma, Colon, Dot, DotDot,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Plus, Minus, Star,
  Lt, Le, EqSign, Ne,
  Bang, AndAnd, OrOr
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  long long num = 0;
  SrcPos pos;
};

const char* tokName(Tok t);

// Tokenizes the whole input; throws ParseError on bad characters.
std::vector<Token> lex(const std::string& src);

}  // namespace optri
