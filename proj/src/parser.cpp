#include "parser.hpp"

#include <set>

#include "diag.hpp"
#include "intrinsics.hpp"
#include "lexer.hpp"

namespace optri {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Program program() {
    Program p;
    while (at(Tok::KwRecord)) p.records.push_back(recordDecl());
    while (at(Tok::KwProc)) p.procs.push_back(procDef());
    p.main = stat();
    expect(Tok::Eof);
    markRecursion(p);
    return p;
  }

  StatPtr statOnly() {
    auto s = stat();
    expect(Tok::Eof);
    return s;
  }

  ExprPtr exprOnly() {
    auto e = expr();
    expect(Tok::Eof);
    return e;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(size_t off = 1) const {
    size_t i = pos_ + off;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return cur().kind == k; }
  Token consume() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool match(Tok k) {
    if (at(k)) {
      consume();
      return true;
    }
    return false;
  }
  Token expect(Tok k) {
    if (!at(k))
      throw ParseError(cur().pos, std::string("expected ") + tokName(k) + ", found " +
                                      tokName(cur().kind));
    return consume();
  }
  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError(cur().pos, "expected " + expected + ", found " + tokName(cur().kind));
  }

  bool atExprStart() const {
    switch (cur().kind) {
      case Tok::Num:
      case Tok::KwTt:
      case Tok::KwFf:
      case Tok::KwNil:
      case Tok::Ident:
      case Tok::LBrace:
      case Tok::LParen:
      case Tok::Minus:
      case Tok::Bang:
        return true;
      default:
        return false;
    }
  }

  bool atStatStart() const {
    switch (cur().kind) {
      case Tok::KwSkip:
      case Tok::KwIf:
      case Tok::KwWhile:
      case Tok::KwFor:
      case Tok::KwReturn:
      case Tok::Ident:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  // -- declarations ---------------------------------------------------------

  long long signedNum() {
    bool neg = match(Tok::Minus);
    auto t = expect(Tok::Num);
    return neg ? -t.num : t.num;
  }

  Domain domain() {
    SrcPos p = cur().pos;
    if (match(Tok::KwInt)) {
      expect(Tok::LParen);
      long long lo = signedNum();
      expect(Tok::DotDot);
      long long hi = signedNum();
      expect(Tok::RParen);
      if (lo > hi) throw ParseError(p, "empty integer range");
      return Domain::intRange(lo, hi);
    }
    if (match(Tok::KwBool)) return Domain::boolean();
    if (match(Tok::KwSet)) {
      expect(Tok::LParen);
      long long lo = signedNum();
      expect(Tok::DotDot);
      long long hi = signedNum();
      expect(Tok::RParen);
      if (lo > hi) throw ParseError(p, "empty set universe");
      return Domain::setRange(lo, hi);
    }
    if (match(Tok::KwArray)) {
      expect(Tok::LParen);
      auto len = expect(Tok::Num);
      expect(Tok::Comma);
      Domain el = domain();
      expect(Tok::RParen);
      if (el.kind != Domain::Kind::Int && el.kind != Domain::Kind::Ref)
        throw ParseError(p, "array elements must be int or record references");
      return Domain::array(static_cast<int>(len.num), el);
    }
    if (at(Tok::Ident)) {
      auto t = consume();
      return Domain::ref(t.text);
    }
    fail("a type");
  }

  RecordDecl recordDecl() {
    RecordDecl r;
    r.pos = cur().pos;
    expect(Tok::KwRecord);
    r.name = expect(Tok::Ident).text;
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      FieldDecl f;
      f.name = expect(Tok::Ident).text;
      expect(Tok::Colon);
      f.type = domain();
      if (f.type.kind == Domain::Kind::Array || f.type.kind == Domain::Kind::Set)
        throw ParseError(r.pos, "record fields must be int, bool or record references");
      r.fields.push_back(std::move(f));
      if (!match(Tok::Semi)) break;
    }
    expect(Tok::RBrace);
    return r;
  }

  VarDecl varDecl() {
    VarDecl v;
    v.name = expect(Tok::Ident).text;
    expect(Tok::Colon);
    v.type = domain();
    return v;
  }

  ProcDef procDef() {
    ProcDef pd;
    pd.pos = cur().pos;
    expect(Tok::KwProc);
    if (match(Tok::KwVoid)) {
      pd.ret.kind = RetType::Kind::Void;
    } else if (match(Tok::KwInt)) {
      pd.ret.kind = RetType::Kind::Int;
    } else if (match(Tok::KwBool)) {
      pd.ret.kind = RetType::Kind::Bool;
    } else if (match(Tok::KwSet)) {
      pd.ret.kind = RetType::Kind::Set;
    } else if (at(Tok::Ident)) {
      pd.ret.kind = RetType::Kind::Ref;
      pd.ret.record = consume().text;
    } else {
      fail("a return type");
    }
    pd.name = expect(Tok::Ident).text;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      pd.formals.push_back(varDecl());
      while (match(Tok::Comma)) pd.formals.push_back(varDecl());
    }
    expect(Tok::RParen);
    if (match(Tok::KwVars)) {
      pd.locals.push_back(varDecl());
      while (match(Tok::Comma)) pd.locals.push_back(varDecl());
    }
    expect(Tok::LBrace);
    pd.body = stat();
    expect(Tok::RBrace);
    return pd;
  }

  // -- statements -----------------------------------------------------------

  StatPtr stat() {
    SrcPos p = cur().pos;
    StatPtr s = seq();
    while (at(Tok::Box)) {
      consume();
      s = mkChoice(s, seq(), p);
    }
    return s;
  }

  StatPtr seq() {
    SrcPos p = cur().pos;
    std::vector<StatPtr> parts{atom()};
    while (at(Tok::Semi)) {
      consume();
      if (!atStatStart()) break;  // tolerate a trailing separator before a closer
      parts.push_back(atom());
    }
    if (parts.size() == 1) return parts[0];
    return seqOf(parts, p);
  }

  StatPtr atom() {
    SrcPos p = cur().pos;
    switch (cur().kind) {
      case Tok::KwSkip:
        consume();
        return mkSkip(p);
      case Tok::LParen: {
        consume();
        auto s = stat();
        expect(Tok::RParen);
        return s;
      }
      case Tok::KwIf: {
        consume();
        auto c = expr();
        expect(Tok::KwThen);
        auto thenS = stat();
        StatPtr elseS;
        if (match(Tok::KwElse)) elseS = stat();
        expect(Tok::KwFi);
        return mkIf(c, thenS, elseS, p);
      }
      case Tok::KwWhile: {
        consume();
        auto c = expr();
        auto body = stat();
        expect(Tok::KwElihw);
        return mkWhile(c, body, p);
      }
      case Tok::KwFor: {
        consume();
        std::string v = expect(Tok::Ident).text;
        if (match(Tok::KwIn)) {
          auto setE = expr();
          auto body = stat();
          expect(Tok::KwRof);
          return mkForIn(v, setE, body, p);
        }
        expect(Tok::EqSign);
        auto first = expr();
        bool down = false;
        if (match(Tok::KwDownto))
          down = true;
        else
          expect(Tok::KwTo);
        auto second = expr();
        auto body = stat();
        expect(Tok::KwRof);
        return down ? mkForDown(v, first, second, body, p) : mkForUp(v, first, second, body, p);
      }
      case Tok::KwReturn: {
        consume();
        if (atExprStart()) return mkReturn(expr(), p);
        return mkReturn(nullptr, p);
      }
      case Tok::Ident: {
        // Procedure call statement: Id ( ... ) not followed by an access path.
        if (peek().kind == Tok::LParen) {
          Intrinsic dummy;
          if (!lookupIntrinsic(cur().text, dummy)) {
            std::string callee = consume().text;
            consume();  // (
            auto actuals = exprList(Tok::RParen);
            expect(Tok::RParen);
            return mkProcCall(callee, actuals, p);
          }
        }
        return assignment(p);
      }
      default:
        fail("a statement");
    }
  }

  std::vector<ExprPtr> exprList(Tok closer) {
    std::vector<ExprPtr> out;
    if (at(closer)) return out;
    out.push_back(expr());
    while (match(Tok::Comma)) out.push_back(expr());
    return out;
  }

  LValue lvalue() {
    LValue lv;
    lv.pos = cur().pos;
    lv.var = expect(Tok::Ident).text;
    for (;;) {
      if (match(Tok::LBracket)) {
        LvAccess acc;
        acc.isField = false;
        acc.index = expr();
        expect(Tok::RBracket);
        lv.path.push_back(std::move(acc));
      } else if (at(Tok::Dot)) {
        consume();
        LvAccess acc;
        acc.isField = true;
        acc.field = expect(Tok::Ident).text;
        lv.path.push_back(std::move(acc));
      } else {
        break;
      }
    }
    return lv;
  }

  StatPtr assignment(SrcPos p) {
    std::vector<LValue> targets{lvalue()};
    while (match(Tok::Comma)) targets.push_back(lvalue());
    expect(Tok::Assign);

    bool single = targets.size() == 1 && targets[0].path.empty();
    if (single && at(Tok::LBracket)) {
      consume();
      auto lo = expr();
      expect(Tok::Colon);
      auto hi = expr();
      expect(Tok::RBracket);
      return mkRangeAssign(targets[0].var, lo, hi, p);
    }
    if (single && at(Tok::KwSelect)) {
      consume();
      expect(Tok::KwIn);
      return mkSelectIn(targets[0].var, expr(), p);
    }
    if (single && at(Tok::KwNew)) {
      consume();
      std::string rec = expect(Tok::Ident).text;
      expect(Tok::LParen);
      std::vector<std::pair<std::string, ExprPtr>> inits;
      if (!at(Tok::RParen)) {
        do {
          std::string f = expect(Tok::Ident).text;
          expect(Tok::Colon);
          inits.emplace_back(f, expr());
        } while (match(Tok::Comma));
      }
      expect(Tok::RParen);
      return mkNew(targets[0].var, rec, inits, p);
    }
    if (single && at(Tok::Ident) && peek().kind == Tok::LParen) {
      Intrinsic dummy;
      if (!lookupIntrinsic(cur().text, dummy)) {
        std::string callee = consume().text;
        consume();  // (
        auto actuals = exprList(Tok::RParen);
        expect(Tok::RParen);
        return mkAssignCall(targets[0].var, callee, actuals, p);
      }
    }

    std::vector<ExprPtr> rhs{expr()};
    while (match(Tok::Comma)) rhs.push_back(expr());
    if (rhs.size() != targets.size())
      throw ParseError(p, "assignment arity mismatch: " + std::to_string(targets.size()) +
                              " targets, " + std::to_string(rhs.size()) + " expressions");
    return mkAssign(std::move(targets), std::move(rhs), p);
  }

  // -- expressions ----------------------------------------------------------

  ExprPtr expr() { return orExpr(); }

  ExprPtr orExpr() {
    auto e = andExpr();
    while (at(Tok::OrOr)) {
      SrcPos p = consume().pos;
      e = mkBinary(BinOp::Or, e, andExpr(), p);
    }
    return e;
  }

  ExprPtr andExpr() {
    auto e = notExpr();
    while (at(Tok::AndAnd)) {
      SrcPos p = consume().pos;
      e = mkBinary(BinOp::And, e, notExpr(), p);
    }
    return e;
  }

  ExprPtr notExpr() {
    if (at(Tok::Bang)) {
      SrcPos p = consume().pos;
      return mkUnary(UnOp::Not, notExpr(), p);
    }
    return cmpExpr();
  }

  ExprPtr cmpExpr() {
    auto e = minExpr();
    SrcPos p = cur().pos;
    switch (cur().kind) {
      case Tok::Lt:
        consume();
        return mkBinary(BinOp::Lt, e, minExpr(), p);
      case Tok::EqSign:
        consume();
        return mkBinary(BinOp::Eq, e, minExpr(), p);
      case Tok::Ne:
        consume();
        return mkUnary(UnOp::Not, mkBinary(BinOp::Eq, e, minExpr(), p), p);
      case Tok::Le: {
        consume();
        auto rhs = minExpr();
        return mkUnary(UnOp::Not, mkBinary(BinOp::Lt, rhs, e, p), p);
      }
      case Tok::KwIn:
        consume();
        return mkBinary(BinOp::In, e, minExpr(), p);
      default:
        return e;
    }
  }

  ExprPtr minExpr() {
    auto e = addExpr();
    while (at(Tok::KwMin)) {
      SrcPos p = consume().pos;
      e = mkBinary(BinOp::Min, e, addExpr(), p);
    }
    return e;
  }

  ExprPtr addExpr() {
    auto e = mulExpr();
    for (;;) {
      if (at(Tok::Plus)) {
        SrcPos p = consume().pos;
        e = mkBinary(BinOp::Add, e, mulExpr(), p);
      } else if (at(Tok::Minus)) {
        SrcPos p = consume().pos;
        e = mkBinary(BinOp::Sub, e, mulExpr(), p);
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr mulExpr() {
    auto e = unaryExpr();
    while (at(Tok::Star)) {
      SrcPos p = consume().pos;
      e = mkBinary(BinOp::Mul, e, unaryExpr(), p);
    }
    return e;
  }

  ExprPtr unaryExpr() {
    if (at(Tok::Minus)) {
      SrcPos p = consume().pos;
      return mkUnary(UnOp::Neg, unaryExpr(), p);
    }
    return postfix();
  }

  ExprPtr postfix() {
    auto e = primary();
    for (;;) {
      if (at(Tok::LBracket)) {
        SrcPos p = consume().pos;
        auto idx = expr();
        expect(Tok::RBracket);
        if (e->kind != Expr::Kind::Var)
          throw ParseError(p, "only named arrays can be indexed");
        e = mkIndex(e->name, idx, p);
      } else if (at(Tok::Dot)) {
        SrcPos p = consume().pos;
        std::string f = expect(Tok::Ident).text;
        e = mkField(e, f, p);
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr primary() {
    SrcPos p = cur().pos;
    switch (cur().kind) {
      case Tok::Num: {
        auto t = consume();
        return mkIntLit(t.num, p);
      }
      case Tok::KwTt:
        consume();
        return mkBoolLit(true, p);
      case Tok::KwFf:
        consume();
        return mkBoolLit(false, p);
      case Tok::KwNil:
        consume();
        return mkNil(p);
      case Tok::Ident: {
        auto t = consume();
        if (at(Tok::LParen)) {
          consume();
          auto args = exprList(Tok::RParen);
          expect(Tok::RParen);
          return mkCall(t.text, args, p);
        }
        return mkVar(t.text, p);
      }
      case Tok::LBrace: {
        consume();
        if (match(Tok::RBrace)) return mkSetLit({}, p);
        auto first = expr();
        if (match(Tok::Colon)) {
          auto hi = expr();
          expect(Tok::RBrace);
          return mkSetRange(first, hi, p);
        }
        std::vector<ExprPtr> elems{first};
        while (match(Tok::Comma)) elems.push_back(expr());
        expect(Tok::RBrace);
        return mkSetLit(std::move(elems), p);
      }
      case Tok::LParen: {
        consume();
        auto e = expr();
        expect(Tok::RParen);
        return e;
      }
      default:
        fail("an expression");
    }
  }
};

}  // namespace

Program parseProgram(const std::string& src) { return Parser(src).program(); }
StatPtr parseStat(const std::string& src) { return Parser(src).statOnly(); }
ExprPtr parseExpr(const std::string& src) { return Parser(src).exprOnly(); }

}  // namespace optri
