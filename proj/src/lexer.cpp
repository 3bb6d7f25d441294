#include "lexer.hpp"

#include <cctype>
#include <map>

#include "diag.hpp"

namespace optri {

const char* tokName(Tok t) {
  switch (t) {
    case Tok::Eof: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Num: return "number";
    case Tok::KwSkip: return "'skip'";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwFi: return "'fi'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwElihw: return "'elihw'";
    case Tok::KwFor: return "'for'";
    case Tok::KwTo: return "'to'";
    case Tok::KwDownto: return "'downto'";
    case Tok::KwIn: return "'in'";
    case Tok::KwRof: return "'rof'";
    case Tok::KwSelect: return "'select'";
    case Tok::KwNew: return "'new'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwRecord: return "'record'";
    case Tok::KwProc: return "'proc'";
    case Tok::KwVars: return "'vars'";
    case Tok::KwVoid: return "'void'";
    case Tok::KwInt: return "'int'";
    case Tok::KwBool: return "'bool'";
    case Tok::KwSet: return "'set'";
    case Tok::KwArray: return "'array'";
    case Tok::KwTt: return "'tt'";
    case Tok::KwFf: return "'ff'";
    case Tok::KwNil: return "'nil'";
    case Tok::KwMin: return "'min'";
    case Tok::Assign: return "':='";
    case Tok::Box: return "'[]'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::EqSign: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Bang: return "'!'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
  }
  return "?";
}

std::vector<Token> lex(const std::string& src) {
  static const std::map<std::string, Tok> kw = {
      {"skip", Tok::KwSkip},     {"if", Tok::KwIf},         {"then", Tok::KwThen},
      {"else", Tok::KwElse},     {"fi", Tok::KwFi},         {"while", Tok::KwWhile},
      {"elihw", Tok::KwElihw},   {"for", Tok::KwFor},       {"to", Tok::KwTo},
      {"downto", Tok::KwDownto}, {"in", Tok::KwIn},         {"rof", Tok::KwRof},
      {"select", Tok::KwSelect}, {"new", Tok::KwNew},       {"return", Tok::KwReturn},
      {"record", Tok::KwRecord}, {"proc", Tok::KwProc},     {"vars", Tok::KwVars},
      {"void", Tok::KwVoid},     {"int", Tok::KwInt},       {"bool", Tok::KwBool},
      {"set", Tok::KwSet},       {"array", Tok::KwArray},   {"tt", Tok::KwTt},
      {"ff", Tok::KwFf},         {"nil", Tok::KwNil},       {"min", Tok::KwMin}};

  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto pos = [&]() { return SrcPos{line, col}; };
  auto advance = [&](size_t n = 1) {
    for (size_t k = 0; k < n && i < src.size(); ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto peek = [&](size_t off = 0) -> char { return i + off < src.size() ? src[i + off] : '\0'; };

  while (i < src.size()) {
    char c = peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < src.size() && peek() != '\n') advance();
      continue;
    }
    Token t;
    t.pos = pos();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        id += peek();
        advance();
      }
      auto it = kw.find(id);
      t.kind = it != kw.end() ? it->second : Tok::Ident;
      t.text = id;
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      std::string digits;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      if (digits.size() > 18) throw ParseError(t.pos, "integer literal too large");
      v = std::stoll(digits);
      t.kind = Tok::Num;
      t.num = v;
      t.text = digits;
      out.push_back(t);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    if (two(':', '=')) { t.kind = Tok::Assign; advance(2); }
    else if (two('[', ']')) { t.kind = Tok::Box; advance(2); }
    else if (two('.', '.')) { t.kind = Tok::DotDot; advance(2); }
    else if (two('<', '=')) { t.kind = Tok::Le; advance(2); }
    else if (two('!', '=')) { t.kind = Tok::Ne; advance(2); }
    else if (two('&', '&')) { t.kind = Tok::AndAnd; advance(2); }
    else if (two('|', '|')) { t.kind = Tok::OrOr; advance(2); }
    else {
      switch (c) {
        case ';': t.kind = Tok::Semi; break;
        case ',': t.kind = Tok::Comma; break;
        case ':': t.kind = Tok::Colon; break;
        case '.': t.kind = Tok::Dot; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '<': t.kind = Tok::Lt; break;
        case '=': t.kind = Tok::EqSign; break;
        case '!': t.kind = Tok::Bang; break;
        default:
          throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
      }
      advance();
    }
    out.push_back(t);
  }
  Token eof;
  eof.kind = Tok::Eof;
  eof.pos = pos();
  out.push_back(eof);
  return out;
}

}  // namespace optri
